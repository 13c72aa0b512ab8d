// Acceptance suite: one PASS/FAIL line per criterion (criterion 7 also
// prints its sub-checks). Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dtco/cli.hpp"
#include "dtco/dynamics.hpp"
#include "dtco/entanglement.hpp"
#include "dtco/model.hpp"
#include "dtco/numerics.hpp"
#include "dtco/wavefunction.hpp"

using namespace dtco;

namespace {

// Tolerances and budgets.
constexpr double kOracleTol = 1e-5;
constexpr int kMinOraclePoints = 25;
constexpr double kOracleBudgetSeconds = 300.0;
constexpr double kInvariantTol = 1e-12;
constexpr int kInvariantPoints = 10;
constexpr int kInvariantSteps = 1'000'000;
constexpr double kInvariantBudgetSeconds = 10.0;
constexpr double kRecurrenceTol = 1e-12;
constexpr double kOverlapTol = 1e-6;
constexpr int kMaxQuantum = 3;
constexpr double kOverlapBudgetSeconds = 60.0;
constexpr double kUncertaintyTol = 1e-8;
constexpr double kTrendHigh = 0.9;
constexpr double kHalvingLow = 2.0 * 0.8;
constexpr double kHalvingHigh = 2.0 * 1.2;
constexpr double kNyquistTol = 1e-12;
constexpr int kNyquistPairs = 100;

struct Line {
    bool passed;
    std::string detail;
};

int g_failures = 0;

void report(const std::string& label, const Line& line) {
    std::printf("%s %s: %s\n", line.passed ? "PASS" : "FAIL", label.c_str(), line.detail.c_str());
    std::fflush(stdout);
    if (!line.passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SystemParams random_physical(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> k_dist(0.05, 2.0);
    std::uniform_real_distribution<double> sigma_dist(0.0, 2.0);
    std::uniform_real_distribution<double> load_dist(0.05, 3.9);
    const double k = k_dist(rng);
    const double sigma = sigma_dist(rng);
    return {k, sigma, std::sqrt(load_dist(rng) / (k + 2.0 * sigma))};
}

// 1. Closed-form S_L against 1 - Tr rho_1^2 by 4D quadrature.
Line oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
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
    std::string where;
    bool converged = true;
    bool has_required = false;
    for (const auto& p : points) {
        if (p == SystemParams(0.1, 0.3, 0.0) || p == SystemParams(0.1, 0.3, 2.0)) has_required = true;
        const PurityResult r = purity_oracle(p);
        converged = converged && r.converged;
        const double diff = std::abs((1.0 - r.purity) - linear_entropy(p).s_linear);
        if (diff > worst) {
            worst = diff;
            where = fmt::format("(k={}, sigma={}, eps={})", p.k(), p.sigma(), p.epsilon());
        }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = points.size() >= kMinOraclePoints && has_required && converged &&
                    worst <= kOracleTol && elapsed < kOracleBudgetSeconds;
    return {ok, fmt::format("{} Physical points, max |diff| = {:.3e} at {} (tol {:.0e}), "
                            "quadrature converged: {}, {:.1f} s",
                            points.size(), worst, where, kOracleTol, converged, elapsed)};
}

// 2. Invariants over 1e6 steps at random Physical points.
Line invariant_conservation() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < kInvariantPoints; ++trial) {
        const SystemParams p = random_physical(rng);
        PhasePoint s{u(rng), u(rng), u(rng), u(rng)};
        const double i1 = classical_invariant(s, Mode::One, p);
        const double i2 = classical_invariant(s, Mode::Two, p);
        for (int n = 0; n < kInvariantSteps; ++n) {
            s = step(s, p);
            worst = std::max(worst, std::abs(classical_invariant(s, Mode::One, p) - i1) / i1);
            worst = std::max(worst, std::abs(classical_invariant(s, Mode::Two, p) - i2) / i2);
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst <= kInvariantTol && elapsed < kInvariantBudgetSeconds,
            fmt::format("{} points x {} steps, max relative drift {:.3e} (tol {:.0e}), {:.2f} s",
                        kInvariantPoints, kInvariantSteps, worst, kInvariantTol, elapsed)};
}

// 3. Three-term recurrence along propagated trajectories.
Line recurrence_identity() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    int trajectories = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const SystemParams p = random_physical(rng);
        const Trajectory t = propagate({u(rng), u(rng), u(rng), u(rng)}, p, 10'000);
        for (Mode mode : {Mode::One, Mode::Two}) {
            double scale = 0.0;
            for (const auto& s : t.states) scale = std::max(scale, std::abs(s.position(mode)));
            worst = std::max(worst, recurrence_residual(t, mode) / scale);
        }
        ++trajectories;
    }
    return {worst <= kRecurrenceTol,
            fmt::format("{} trajectories x 10000 steps, max scaled residual {:.3e} (tol {:.0e})",
                        trajectories, worst, kRecurrenceTol)};
}

// 4. <Psi_nm, Psi_n'm'> = delta delta for n, m, n', m' <= 3.
Line normalization_orthogonality() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::size_t pairs = 0;
    for (double eps : {0.0, 2.0}) {
        const SystemParams p(0.1, 0.3, eps);
        const QuadratureGrid g = make_grid(QuadratureSpec{}, wave_length_scale(p));
        std::vector<std::vector<Amplitude>> table;
        for (int n = 0; n <= kMaxQuantum; ++n) {
            for (int m = 0; m <= kMaxQuantum; ++m) {
                const Eigenfunction f({n, m, p});
                std::vector<Amplitude> values(g.size() * g.size());
                for (std::size_t i = 0; i < g.size(); ++i) {
                    for (std::size_t j = 0; j < g.size(); ++j) values[i * g.size() + j] = f(g.nodes[i], g.nodes[j]);
                }
                table.push_back(std::move(values));
            }
        }
        for (std::size_t a = 0; a < table.size(); ++a) {
            for (std::size_t b = 0; b < table.size(); ++b) {
                Amplitude sum = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    for (std::size_t j = 0; j < g.size(); ++j) {
                        const std::size_t idx = i * g.size() + j;
                        sum += g.weights[i] * g.weights[j] * std::conj(table[a][idx]) * table[b][idx];
                    }
                }
                worst = std::max(worst, std::abs(sum - (a == b ? 1.0 : 0.0)));
                ++pairs;
            }
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst <= kOverlapTol && elapsed < kOverlapBudgetSeconds,
            fmt::format("{} overlaps at eps in {{0, 2}}, max |<a|b> - delta| = {:.3e} (tol {:.0e}), {:.1f} s",
                        pairs, worst, kOverlapTol, elapsed)};
}

// 5. Uncertainty product: closed form vs quadrature moments.
Line uncertainty_relation() {
    double worst = 0.0;
    bool exact_at_zero = true;
    for (double eps : {0.0, 2.0}) {
        const SystemParams p(0.1, 0.3, eps);
        for (Mode mode : {Mode::One, Mode::Two}) {
            for (int y = 0; y <= 2; ++y) {
                const double closed = uncertainty_product(mode, y, p);
                worst = std::max(worst, std::abs(uncertainty_moments(mode, y, p).product() - closed));
                if (eps == 0.0) exact_at_zero = exact_at_zero && closed == p.hbar() * (y + 0.5);
            }
        }
    }
    return {worst <= kUncertaintyTol && exact_at_zero,
            fmt::format("max |closed - moments| = {:.3e} (tol {:.0e}), exactly hbar(y+1/2) at eps=0: {}",
                        worst, kUncertaintyTol, exact_at_zero)};
}

// 6. Cut-off flags in the sweep and refusals from single-point commands.
Line cutoff_structure() {
    std::vector<double> sigma;
    for (int i = 0; i <= 300; ++i) sigma.push_back(3.0 * i / 300);
    const std::vector<double> k{0.1};
    const std::vector<double> eps{2.0};
    const SweepTable t = entropy_sweep(k, sigma, eps);
    int mismatched = 0;
    int flagged = 0;
    for (const auto& row : t.rows) {
        const bool flag = row.regime != Regime::Physical;
        flagged += flag;
        if (flag != (row.sigma >= 0.45) || row.s_linear.has_value() == flag) ++mismatched;
    }
    bool refused = true;
    for (const char* s : {"0.45", "0.5"}) {
        for (const char* cmd : {"density"}) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run({cmd, "--k", "0.1", "--sigma", s, "--epsilon", "2"}, out, err);
            refused = refused && code == cli::kUnphysical &&
                      err.str().find("sigma >= 2/epsilon^2 - k/2") != std::string::npos;
        }
        try {
            (void)psi({0, 0, SystemParams(0.1, std::stod(s), 2.0)}, 0.0, 0.0);
            refused = false;
        } catch (const NonexistentStateError& e) {
            refused = refused && e.violated() == "sigma >= 2/epsilon^2 - k/2";
        }
    }
    return {mismatched == 0 && refused,
            fmt::format("{} of {} sweep rows flagged, {} mismatches against sigma >= 0.45; "
                        "sigma = 0.45 and 0.5 refused with the inequality: {}",
                        flagged, t.rows.size(), mismatched, refused)};
}

// 7. Shape of S_L(sigma).
void entropy_shape() {
    std::vector<double> sigma;
    for (int i = 0; i <= 300; ++i) sigma.push_back(3.0 * i / 300);
    const std::vector<double> ks{0.1, 0.5, 1.0};
    const std::vector<double> zero{0.0};
    const SweepTable t = entropy_sweep(ks, sigma, zero);

    bool monotone = true;
    bool ordered = true;
    for (std::size_t b = 0; b < ks.size(); ++b) {
        for (std::size_t i = 1; i < sigma.size(); ++i) {
            const double s = *t.rows[b * sigma.size() + i].s_linear;
            monotone = monotone && s > *t.rows[b * sigma.size() + i - 1].s_linear;
            if (b > 0) ordered = ordered && s < *t.rows[(b - 1) * sigma.size() + i].s_linear;
        }
    }
    report("7a", {monotone, "eps=0: S_L strictly increasing in sigma on [0, 3] for k in {0.1, 0.5, 1.0}"});
    report("7b", {ordered, "eps=0: larger k gives pointwise smaller S_L for sigma in (0, 3]"});

    const double far = linear_entropy(SystemParams(0.1, 1e3, 0.0)).s_linear;
    report("7c", {far > kTrendHigh, fmt::format("S_L(sigma=1e3, k=0.1, eps=0) = {:.10f}, required > {}",
                                                far, kTrendHigh)});

    const double eps = 2.0;
    const double sigma_cut = cutoff_bounds(SystemParams(0.1, 0.0, eps))->sigma_max;
    double peak = 0.0;
    int physical = 0;
    for (int i = 0; i < 100'000; ++i) {
        const SystemParams p(0.1, sigma_cut * i / 100'000.0, eps);
        if (mode_spectrum(p).regime != Regime::Physical) continue;
        ++physical;
        peak = std::max(peak, linear_entropy(p).s_linear);
    }
    report("7d", {peak < 1.0, fmt::format("eps=2: max S_L over {} Physical sigma in [0, {}) is {:.10f} < 1",
                                          physical, sigma_cut, peak)});
}

// 8. Continuum limit.
Line continuum_limit() {
    const SystemParams base(0.1, 0.3, 0.0);
    const PhasePoint s0{1.0, 0.0, 0.5, 0.2};
    const double horizon = 20.0;
    const auto trajectory_error = [&](int steps) {
        const SystemParams q = base.with_epsilon(horizon / steps);
        const Trajectory t = propagate(s0, q, static_cast<std::size_t>(steps));
        double err = 0.0;
        for (std::size_t n = 0; n < t.states.size(); ++n) {
            const PhasePoint exact = exact_continuous_state(s0, q, t.time(n));
            err = std::max({err, std::abs(t.states[n].X1 - exact.X1), std::abs(t.states[n].X2 - exact.X2),
                            std::abs(t.states[n].P1 - exact.P1), std::abs(t.states[n].P2 - exact.P2)});
        }
        return err;
    };
    bool halves = true;
    std::string ratios;
    for (int steps : {250, 500, 1000, 2000}) {
        const double ratio = trajectory_error(steps) / trajectory_error(2 * steps);
        halves = halves && ratio >= kHalvingLow && ratio <= kHalvingHigh;
        ratios += fmt::format("{}{:.3f}", ratios.empty() ? "" : ", ", ratio);
    }

    const double s0_entropy = linear_entropy(base).s_linear;
    bool entropy_down = true;
    double previous = INFINITY;
    std::string entropy_diffs;
    for (double eps : {0.4, 0.2, 0.1}) {
        const double d = std::abs(linear_entropy(base.with_epsilon(eps)).s_linear - s0_entropy);
        entropy_down = entropy_down && d < previous;
        previous = d;
        entropy_diffs += fmt::format("{}{:.3e}", entropy_diffs.empty() ? "" : ", ", d);
    }

    bool wave_down = true;
    std::string wave_diffs;
    const QuadratureGrid g = make_grid(QuadratureSpec{}, wave_length_scale(base));
    for (const WaveSpec spec : {WaveSpec{0, 0, base}, WaveSpec{1, 2, base}}) {
        const Eigenfunction reference(spec);
        previous = INFINITY;
        for (double eps : {0.4, 0.2, 0.1}) {
            const Eigenfunction f({spec.n, spec.m, base.with_epsilon(eps)});
            double sup = 0.0;
            for (double x1 : g.nodes) {
                for (double x2 : g.nodes) sup = std::max(sup, std::abs(f(x1, x2) - reference(x1, x2)));
            }
            wave_down = wave_down && sup < previous;
            previous = sup;
            wave_diffs += fmt::format("{}{:.3e}", wave_diffs.empty() ? "" : ", ", sup);
        }
    }
    return {halves && entropy_down && wave_down,
            fmt::format("error ratios per halving [{}] in [{}, {}]; |dS_L| [{}]; sup|dPsi| [{}]", ratios,
                        kHalvingLow, kHalvingHigh, entropy_diffs, wave_diffs)};
}

// 9. Nyquist rate lands on the cut-off.
Line nyquist_identity() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(1e-3, 10.0);
    double worst = 0.0;
    int labelled_boundary = 0;
    for (int i = 0; i < kNyquistPairs; ++i) {
        const double k = u(rng);
        const double sigma = u(rng);
        const ModeSpectrum s = mode_spectrum(SystemParams(k, sigma, 1.0 / nyquist_cutoff_rate(k, sigma)));
        worst = std::max(worst, std::abs(s.eps2_omega2_sq - 4.0) / 4.0);
        labelled_boundary += s.regime == Regime::Boundary;
    }
    return {worst <= kNyquistTol,
            fmt::format("{} pairs, max |eps^2 w2^2 / 4 - 1| = {:.3e} (tol {:.0e}); {} bitwise on Boundary",
                        kNyquistPairs, worst, kNyquistTol, labelled_boundary)};
}

void run_criterion(const std::string& label, const std::function<Line()>& check) {
    try {
        report(label, check());
    } catch (const std::exception& e) {
        report(label, {false, fmt::format("exception: {}", e.what())});
    }
}

} // namespace

int main() {
    run_criterion("1 oracle equivalence", oracle_equivalence);
    run_criterion("2 invariant conservation", invariant_conservation);
    run_criterion("3 recurrence identity", recurrence_identity);
    run_criterion("4 normalization/orthogonality", normalization_orthogonality);
    run_criterion("5 uncertainty relation", uncertainty_relation);
    run_criterion("6 cut-off structure", cutoff_structure);
    try {
        entropy_shape();
    } catch (const std::exception& e) {
        report("7", {false, fmt::format("exception: {}", e.what())});
    }
    run_criterion("8 continuum limit", continuum_limit);
    run_criterion("9 nyquist identity", nyquist_identity);
    std::printf("%d failing line(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
