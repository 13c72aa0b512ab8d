#include "dtco/entanglement.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <fmt/format.h>

#include "dtco/wavefunction.hpp"

namespace dtco {

GammaBeta gamma_beta(const SystemParams& params) {
    const ModeSpectrum s = require_bound_state(params);
    const double o1 = *s.discrete_omega1;
    const double o2 = *s.discrete_omega2;
    const double sum = o1 + o2;
    const double eps_sigma = params.epsilon() * params.sigma();
    const double chirp_term = eps_sigma * eps_sigma / (4.0 * sum);
    const double diff = o1 - o2;
    return {sum / 4.0 + o1 * o2 / sum + chirp_term,
            (diff * diff + eps_sigma * eps_sigma) / (4.0 * sum)};
}

EntropyResult linear_entropy(const SystemParams& params) {
    const auto [gamma, beta] = gamma_beta(params);
    const double minus = gamma - beta;
    const double plus = gamma + beta;
    const double s_linear = 1.0 - minus / std::sqrt(minus * plus);
    return {gamma, beta, s_linear, mode_spectrum(params).regime, params};
}

QuadratureSpec default_purity_quadrature() { return {8.0, 61, QuadratureRule::Trapezoid}; }

namespace {

struct PurityValue {
    double purity;
    double trace;
};

PurityValue reduced_purity(const Eigenfunction& ground, const QuadratureGrid& grid,
                           Subsystem keep) {
    const std::size_t n = grid.size();
    // table[i * n + j] = Psi_00 at particle coordinates (x_i, x_j)
    std::vector<Amplitude> table(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const PhasePoint q = to_normal(ParticleState{grid.nodes[i], grid.nodes[j], 0.0, 0.0});
            const Amplitude v = ground(q.X1, q.X2);
            if (!detail::finite_value(v)) throw QuadratureError({grid.nodes[i], grid.nodes[j]});
            table[i * n + j] = v;
        }
    }
    const auto at = [&](std::size_t kept, std::size_t traced) {
        return keep == Subsystem::One ? table[kept * n + traced] : table[traced * n + kept];
    };

    // rho(a, b) = sum_t w_t Psi(a, t) conj(Psi(b, t)); Hermitian, so only b >= a is formed.
    std::vector<Amplitude> rho(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            Amplitude acc{};
            for (std::size_t t = 0; t < n; ++t) {
                acc += grid.weights[t] * at(a, t) * std::conj(at(b, t));
            }
            rho[a * n + b] = acc;
            rho[b * n + a] = std::conj(acc);
        }
    }

    double trace = 0.0;
    double purity = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        trace += grid.weights[a] * rho[a * n + a].real();
        for (std::size_t b = 0; b < n; ++b) {
            // rho(a, b) rho(b, a) = |rho(a, b)|^2
            purity += grid.weights[a] * grid.weights[b] * std::norm(rho[a * n + b]);
        }
    }
    return {purity, trace};
}

} // namespace

PurityResult purity_oracle(const SystemParams& params, const QuadratureSpec& quadrature,
                           Subsystem keep) {
    const Eigenfunction ground(WaveSpec{0, 0, params});
    const double scale = ground.length_scale();

    const PurityValue coarse = reduced_purity(ground, make_grid(quadrature, scale), keep);
    QuadratureSpec finer = quadrature;
    finer.points_per_axis = 2 * quadrature.points_per_axis - 1;
    const PurityValue fine = reduced_purity(ground, make_grid(finer, scale), keep);

    PurityResult r{coarse.purity, fine.purity, coarse.trace, quadrature.points_per_axis, true, {}};
    const double change = std::abs(fine.purity - coarse.purity);
    if (change > 1e-5) {
        r.converged = false;
        r.warning = fmt::format(
            "purity quadrature not converged: {} points give {:.10f}, {} points give {:.10f}",
            quadrature.points_per_axis, coarse.purity, finer.points_per_axis, fine.purity);
    }
    return r;
}

SweepTable entropy_sweep(std::span<const double> k_values, std::span<const double> sigma_values,
                         std::span<const double> epsilon_values, double hbar) {
    if (k_values.empty() || sigma_values.empty() || epsilon_values.empty()) {
        throw std::invalid_argument("entropy_sweep: every axis needs at least one value");
    }
    SweepTable table;
    table.k_values.assign(k_values.begin(), k_values.end());
    table.sigma_values.assign(sigma_values.begin(), sigma_values.end());
    table.epsilon_values.assign(epsilon_values.begin(), epsilon_values.end());
    table.hbar = hbar;
    table.rows.reserve(k_values.size() * sigma_values.size() * epsilon_values.size());

    for (double k : k_values) {
        for (double eps : epsilon_values) {
            for (double sigma : sigma_values) {
                const SystemParams p(k, sigma, eps, hbar);
                const ModeSpectrum s = mode_spectrum(p);
                SweepRow row{k, sigma, eps, s.regime, {}, {}, {}, {}};
                if (const auto bounds = cutoff_bounds(p)) row.sigma_cut = bounds->sigma_max;
                if (s.regime == Regime::Physical && *s.discrete_omega1 > 0.0 &&
                    *s.discrete_omega2 > 0.0) {
                    const EntropyResult e = linear_entropy(p);
                    row.gamma = e.gamma;
                    row.beta = e.beta;
                    row.s_linear = e.s_linear;
                }
                table.rows.push_back(row);
            }
        }
    }
    return table;
}

} // namespace dtco
