#include "dtco/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "dtco/dynamics.hpp"
#include "dtco/entanglement.hpp"
#include "dtco/model.hpp"
#include "dtco/numerics.hpp"
#include "dtco/wavefunction.hpp"

namespace dtco {

bool VerifyReport::all_passed() const {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const PropertyOutcome& o) { return o.passed; });
}

const std::vector<std::string>& verification_properties() {
    static const std::vector<std::string> names{
        "normalization", "orthogonality", "uncertainty", "entropy-oracle", "invariants",
        "recurrence",    "continuum",     "cutoff",      "nyquist"};
    return names;
}

namespace {

constexpr std::uint64_t kSeed = 20240611;

QuadratureSpec wave_quadrature(const VerifyOptions& o) {
    QuadratureSpec q;
    if (o.quad_points) q.points_per_axis = *o.quad_points;
    if (o.quad_width) q.half_width_factor = *o.quad_width;
    return q;
}

QuadratureSpec purity_quadrature(const VerifyOptions& o) {
    QuadratureSpec q = default_purity_quadrature();
    if (o.quad_points) q.points_per_axis = *o.quad_points;
    if (o.quad_width) q.half_width_factor = *o.quad_width;
    return q;
}

std::vector<Amplitude> tabulate(const Eigenfunction& f, const QuadratureGrid& g) {
    std::vector<Amplitude> t(g.size() * g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) t[i * g.size() + j] = f(g.nodes[i], g.nodes[j]);
    }
    return t;
}

Amplitude inner(const std::vector<Amplitude>& a, const std::vector<Amplitude>& b,
                const QuadratureGrid& g) {
    Amplitude sum{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            const std::size_t idx = i * g.size() + j;
            sum += g.weights[i] * g.weights[j] * std::conj(a[idx]) * b[idx];
        }
    }
    return sum;
}

/// Physical points drawn with eps^2 omega2^2 in [0.05, 3].
std::vector<SystemParams> random_physical_points(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> k_dist(0.05, 2.0);
    std::uniform_real_distribution<double> sigma_dist(0.0, 2.0);
    std::uniform_real_distribution<double> load_dist(0.05, 3.0);
    std::vector<SystemParams> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double k = k_dist(rng);
        const double sigma = sigma_dist(rng);
        const double eps = std::sqrt(load_dist(rng) / (k + 2.0 * sigma));
        out.emplace_back(k, sigma, eps);
    }
    return out;
}

PropertyOutcome check_normalization(const VerifyOptions& o) {
    const QuadratureSpec q = wave_quadrature(o);
    const std::vector<SystemParams> points{{0.1, 0.3, 0.0}, {0.1, 0.3, 2.0}, {0.5, 1.0, 0.5},
                                           {1.0, 0.2, 1.0}};
    double worst = 0.0;
    for (const auto& p : points) {
        const QuadratureGrid g = make_grid(q, wave_length_scale(p));
        for (int n = 0; n <= 4; ++n) {
            for (int m = 0; m <= 4; ++m) {
                const auto t = tabulate(Eigenfunction({n, m, p}), g);
                worst = std::max(worst, std::abs(inner(t, t, g).real() - 1.0));
            }
        }
    }
    return {"normalization", worst <= 1e-6,
            fmt::format("max |<psi|psi> - 1| = {:.3e} (tol 1e-6, n,m <= 4, {} points/axis)", worst,
                        q.points_per_axis)};
}

PropertyOutcome check_orthogonality(const VerifyOptions& o) {
    const QuadratureSpec q = wave_quadrature(o);
    double worst = 0.0;
    for (double eps : {0.0, 2.0}) {
        const SystemParams p(0.1, 0.3, eps);
        const QuadratureGrid g = make_grid(q, wave_length_scale(p));
        std::vector<std::vector<Amplitude>> tables;
        for (int n = 0; n <= 3; ++n) {
            for (int m = 0; m <= 3; ++m) tables.push_back(tabulate(Eigenfunction({n, m, p}), g));
        }
        for (std::size_t a = 0; a < tables.size(); ++a) {
            for (std::size_t b = 0; b < tables.size(); ++b) {
                const double expected = a == b ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(inner(tables[a], tables[b], g) - expected));
            }
        }
    }
    return {"orthogonality", worst <= 1e-6,
            fmt::format("max |<nm|n'm'> - delta| = {:.3e} (tol 1e-6)", worst)};
}

PropertyOutcome check_uncertainty(const VerifyOptions& o) {
    const QuadratureSpec q = wave_quadrature(o);
    double worst = 0.0;
    double worst_continuum = 0.0;
    for (double eps : {0.0, 2.0}) {
        const SystemParams p(0.1, 0.3, eps);
        for (Mode mode : {Mode::One, Mode::Two}) {
            for (int y = 0; y <= 2; ++y) {
                const double closed = uncertainty_product(mode, y, p);
                const double numeric = uncertainty_moments(mode, y, p, q).product();
                worst = std::max(worst, std::abs(closed - numeric));
                if (eps == 0.0) {
                    worst_continuum = std::max(worst_continuum, std::abs(closed - (y + 0.5)));
                }
            }
        }
    }
    return {"uncertainty", worst <= 1e-8 && worst_continuum == 0.0,
            fmt::format("max |closed - moments| = {:.3e} (tol 1e-8); eps=0 deviation from "
                        "hbar(y+1/2) = {:.1e}",
                        worst, worst_continuum)};
}

PropertyOutcome check_entropy_oracle(const VerifyOptions& o) {
    const QuadratureSpec q = purity_quadrature(o);
    std::vector<SystemParams> points;
    for (double k : {0.1, 0.5, 1.0}) {
        for (double sigma : {0.0, 0.3, 1.0}) {
            for (double eps : {0.0, 0.5, 1.0, 2.0}) {
                const SystemParams p(k, sigma, eps);
                if (mode_spectrum(p).regime == Regime::Physical) points.push_back(p);
            }
        }
    }
    double worst = 0.0;
    double worst_sym = 0.0;
    bool converged = true;
    for (const auto& p : points) {
        const PurityResult r1 = purity_oracle(p, q, Subsystem::One);
        const PurityResult r2 = purity_oracle(p, q, Subsystem::Two);
        converged = converged && r1.converged && r2.converged;
        worst = std::max(worst, std::abs((1.0 - r1.purity) - linear_entropy(p).s_linear));
        worst_sym = std::max(worst_sym, std::abs(r1.purity - r2.purity));
    }
    return {"entropy-oracle", points.size() >= 25 && worst <= 1e-5 && worst_sym <= 1e-6 && converged,
            fmt::format("{} points, max |(1 - purity) - S_L| = {:.3e} (tol 1e-5), "
                        "subsystem asymmetry {:.3e} (tol 1e-6), converged {}",
                        points.size(), worst, worst_sym, converged)};
}

PropertyOutcome check_invariants(const VerifyOptions&) {
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    double worst = 0.0;
    for (const auto& p : random_physical_points(10, kSeed)) {
        PhasePoint s{coord(rng), coord(rng), coord(rng), coord(rng)};
        const double i1 = classical_invariant(s, Mode::One, p);
        const double i2 = classical_invariant(s, Mode::Two, p);
        for (int n = 0; n < 1'000'000; ++n) {
            s = step(s, p);
            worst = std::max(worst, std::abs(classical_invariant(s, Mode::One, p) - i1) / i1);
            worst = std::max(worst, std::abs(classical_invariant(s, Mode::Two, p) - i2) / i2);
        }
    }
    return {"invariants", worst <= 1e-12,
            fmt::format("max relative drift of I1, I2 over 1e6 steps = {:.3e} (tol 1e-12)", worst)};
}

PropertyOutcome check_recurrence(const VerifyOptions&) {
    double worst = 0.0;
    for (const auto& p : random_physical_points(10, kSeed + 2)) {
        const Trajectory t = propagate({0.7, -0.3, -0.4, 0.9}, p, 10'000);
        for (Mode mode : {Mode::One, Mode::Two}) {
            double scale = 0.0;
            for (const auto& s : t.states) scale = std::max(scale, std::abs(s.position(mode)));
            worst = std::max(worst, recurrence_residual(t, mode) / scale);
        }
    }
    return {"recurrence", worst <= 1e-12,
            fmt::format("max scaled residual = {:.3e} (tol 1e-12)", worst)};
}

double trajectory_error(const SystemParams& p, const PhasePoint& s0, double horizon, int steps) {
    const SystemParams q = p.with_epsilon(horizon / steps);
    const Trajectory t = propagate(s0, q, static_cast<std::size_t>(steps));
    double err = 0.0;
    for (std::size_t n = 0; n < t.states.size(); ++n) {
        const PhasePoint exact = exact_continuous_state(s0, q, t.time(n));
        err = std::max({err, std::abs(t.states[n].X1 - exact.X1),
                        std::abs(t.states[n].X2 - exact.X2)});
    }
    return err;
}

double wave_sup_distance(const WaveSpec& spec, double eps, const QuadratureGrid& g) {
    WaveSpec shifted = spec;
    shifted.params = spec.params.with_epsilon(eps);
    const Eigenfunction a(spec);
    const Eigenfunction b(shifted);
    double sup = 0.0;
    for (double x1 : g.nodes) {
        for (double x2 : g.nodes) sup = std::max(sup, std::abs(a(x1, x2) - b(x1, x2)));
    }
    return sup;
}

PropertyOutcome check_continuum(const VerifyOptions& o) {
    const SystemParams base(0.1, 0.3, 0.0);
    const PhasePoint s0{1.0, 0.0, 0.5, 0.2};
    const double e1 = trajectory_error(base, s0, 20.0, 1000);
    const double e2 = trajectory_error(base, s0, 20.0, 2000);
    const double ratio = e1 / e2;
    const bool traj_ok = ratio >= 1.6 && ratio <= 2.4;

    const double s0_l = linear_entropy(base).s_linear;
    std::vector<double> ds;
    for (double eps : {0.4, 0.2, 0.1}) {
        ds.push_back(std::abs(linear_entropy(base.with_epsilon(eps)).s_linear - s0_l));
    }
    const bool entropy_ok = ds[0] > ds[1] && ds[1] > ds[2];

    QuadratureSpec q = wave_quadrature(o);
    const QuadratureGrid g = make_grid(q, wave_length_scale(base));
    bool wave_ok = true;
    std::vector<double> sups;
    for (const WaveSpec spec : {WaveSpec{0, 0, base}, WaveSpec{1, 0, base}}) {
        const double a = wave_sup_distance(spec, 0.5, g);
        const double b = wave_sup_distance(spec, 0.25, g);
        const double c = wave_sup_distance(spec, 0.125, g);
        wave_ok = wave_ok && a > b && b > c;
        sups.insert(sups.end(), {a, b, c});
    }
    return {"continuum", traj_ok && entropy_ok && wave_ok,
            fmt::format("trajectory error ratio {:.3f} (want 2 +/- 20%); |dS_L| {:.3e} > {:.3e} > "
                        "{:.3e}; wave sup-norm {:.3e} > {:.3e} > {:.3e}",
                        ratio, ds[0], ds[1], ds[2], sups[0], sups[1], sups[2])};
}

PropertyOutcome check_cutoff(const VerifyOptions&) {
    std::vector<double> sigma_axis;
    for (int i = 0; i < 61; ++i) sigma_axis.push_back(0.6 * i / 60);
    const std::vector<double> k{0.1};
    const std::vector<double> eps{2.0};
    const SweepTable t = entropy_sweep(k, sigma_axis, eps);
    std::size_t mismatches = 0;
    for (const auto& row : t.rows) {
        const bool flagged = row.regime != Regime::Physical;
        if (flagged != (row.sigma >= 0.45)) ++mismatches;
        if (flagged == row.s_linear.has_value()) ++mismatches;
    }
    int rejected = 0;
    for (double sigma : {0.45, 0.5}) {
        try {
            linear_entropy(SystemParams(0.1, sigma, 2.0));
        } catch (const NonexistentStateError& e) {
            if (e.violated() == "sigma >= 2/epsilon^2 - k/2") ++rejected;
        }
    }
    return {"cutoff", mismatches == 0 && rejected == 2,
            fmt::format("{} mis-flagged rows of {}; {}/2 single points rejected", mismatches,
                        t.rows.size(), rejected)};
}

PropertyOutcome check_nyquist(const VerifyOptions&) {
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_real_distribution<double> dist(0.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double k = dist(rng);
        const double sigma = dist(rng) + 1e-3;
        const double eps = 1.0 / nyquist_cutoff_rate(k, sigma);
        const ModeSpectrum s = mode_spectrum(SystemParams(k, sigma, eps));
        worst = std::max(worst, std::abs(s.eps2_omega2_sq - 4.0) / 4.0);
    }
    return {"nyquist", worst <= 1e-12,
            fmt::format("max |eps^2 w2^2 - 4|/4 at eps = 1/rate = {:.3e} (tol 1e-12)", worst)};
}

using Check = std::function<PropertyOutcome(const VerifyOptions&)>;

const std::vector<std::pair<std::string, Check>>& checks() {
    static const std::vector<std::pair<std::string, Check>> all{
        {"normalization", check_normalization},   {"orthogonality", check_orthogonality},
        {"uncertainty", check_uncertainty},       {"entropy-oracle", check_entropy_oracle},
        {"invariants", check_invariants},         {"recurrence", check_recurrence},
        {"continuum", check_continuum},           {"cutoff", check_cutoff},
        {"nyquist", check_nyquist}};
    return all;
}

} // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    const auto& names = verification_properties();
    for (const auto& name : options.only) {
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw std::invalid_argument(fmt::format("unknown property '{}'", name));
        }
    }
    VerifyReport report;
    for (const auto& [name, check] : checks()) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), name) == options.only.end()) {
            continue;
        }
        try {
            report.outcomes.push_back(check(options));
        } catch (const std::exception& e) {
            report.outcomes.push_back({name, false, fmt::format("error: {}", e.what())});
        }
    }
    return report;
}

} // namespace dtco
