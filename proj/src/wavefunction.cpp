#include "dtco/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace dtco {

namespace {

void check_order(int y, const char* which) {
    if (y < 0 || y > kMaxHermiteOrder) {
        throw std::out_of_range(
            fmt::format("quantum number {} = {} outside [0, {}]", which, y, kMaxHermiteOrder));
    }
}

double omega_sq_of(Mode mode, const SystemParams& p) {
    return mode == Mode::One ? p.omega1_sq() : p.omega2_sq();
}

} // namespace

Eigenfunction::Factor Eigenfunction::make_factor(int order, double big_omega, double omega_sq,
                                                 const SystemParams& p) {
    const double hbar = p.hbar();
    Factor f;
    f.order = order;
    f.log_norm = 0.25 * std::log(big_omega / (std::numbers::pi * hbar)) -
                 0.5 * (order * std::numbers::ln2 + std::lgamma(order + 1.0));
    f.scale = std::sqrt(big_omega / hbar);
    f.decay = big_omega / (2.0 * hbar);
    f.chirp = p.epsilon() * omega_sq / (4.0 * hbar);
    return f;
}

Eigenfunction::Eigenfunction(const WaveSpec& spec)
    : spec_(spec), spectrum_(require_bound_state(spec.params)) {
    check_order(spec.n, "n");
    check_order(spec.m, "m");
    f1_ = make_factor(spec.n, *spectrum_.discrete_omega1, spec.params.omega1_sq(), spec.params);
    f2_ = make_factor(spec.m, *spectrum_.discrete_omega2, spec.params.omega2_sq(), spec.params);
}

double Eigenfunction::real_factor(const Factor& f, double X) const {
    // Gaussian and normalization share one exp to delay underflow in the tails.
    return hermite(f.order, f.scale * X) * std::exp(f.log_norm - f.decay * X * X);
}

Amplitude Eigenfunction::mode_factor(Mode mode, double X) const {
    const Factor& f = factor(mode);
    return std::polar(1.0, f.chirp * X * X) * real_factor(f, X);
}

Amplitude Eigenfunction::operator()(double X1, double X2) const {
    return mode_factor(Mode::One, X1) * mode_factor(Mode::Two, X2);
}

double Eigenfunction::envelope(double X1, double X2) const {
    return std::abs(real_factor(f1_, X1) * real_factor(f2_, X2));
}

double Eigenfunction::length_scale() const {
    const double omega_min = std::min(*spectrum_.discrete_omega1, *spectrum_.discrete_omega2);
    return std::sqrt(spec_.params.hbar() / omega_min);
}

Amplitude psi(const WaveSpec& spec, double X1, double X2) { return Eigenfunction(spec)(X1, X2); }

double energy(const WaveSpec& spec) {
    const ModeSpectrum s = require_bound_state(spec.params);
    check_order(spec.n, "n");
    check_order(spec.m, "m");
    const double hbar = spec.params.hbar();
    return 2.0 * hbar * *s.discrete_omega1 * (spec.n + 0.5) +
           2.0 * hbar * *s.discrete_omega2 * (spec.m + 0.5);
}

double wave_length_scale(const SystemParams& params) {
    return Eigenfunction(WaveSpec{0, 0, params}).length_scale();
}

double default_half_width(const SystemParams& params) { return 8.0 * wave_length_scale(params); }

double DensityGrid::cell_area() const {
    if (x1_axis.size() < 2 || x2_axis.size() < 2) return 0.0;
    return (x1_axis[1] - x1_axis[0]) * (x2_axis[1] - x2_axis[0]);
}

double DensityGrid::riemann_sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0) * cell_area();
}

DensityGrid density_grid(const WaveSpec& spec, double start, double stop, int points) {
    if (points < 11) {
        throw std::invalid_argument(
            fmt::format("density grid needs at least 11 points per axis (got {})", points));
    }
    if (!(stop > start) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw std::invalid_argument(
            fmt::format("density grid needs finite stop > start (got {}:{})", start, stop));
    }
    const Eigenfunction psi_nm(spec);
    DensityGrid grid{spec, {}, {}, {}};
    grid.x1_axis.resize(points);
    for (int i = 0; i < points; ++i) {
        grid.x1_axis[i] = start + (stop - start) * i / (points - 1);
    }
    grid.x2_axis = grid.x1_axis;
    grid.values.resize(static_cast<std::size_t>(points) * points);
    for (int i = 0; i < points; ++i) {
        const Amplitude a = psi_nm.mode_factor(Mode::One, grid.x1_axis[i]);
        for (int j = 0; j < points; ++j) {
            grid.values[static_cast<std::size_t>(i) * points + j] =
                std::norm(a * psi_nm.mode_factor(Mode::Two, grid.x2_axis[j]));
        }
    }
    return grid;
}

DensityGrid density_grid(const WaveSpec& spec, std::optional<double> half_width, int points) {
    const double hw = half_width ? *half_width : default_half_width(spec.params);
    return density_grid(spec, -hw, hw, points);
}

double uncertainty_product(Mode mode, int y, const SystemParams& params) {
    const ModeSpectrum s = require_bound_state(params);
    check_order(y, "y");
    const double eps = params.epsilon();
    const double w_sq = omega_sq_of(mode, params);
    const double big_omega = *s.discrete_omega(mode);
    return params.hbar() * (y + 0.5) *
           std::sqrt(1.0 + eps * eps * w_sq * w_sq / (4.0 * big_omega * big_omega));
}

UncertaintyMoments uncertainty_moments(Mode mode, int y, const SystemParams& params,
                                       const QuadratureSpec& quadrature) {
    WaveSpec spec{0, 0, params};
    (mode == Mode::One ? spec.n : spec.m) = y;
    const Eigenfunction psi_nm(spec);
    const QuadratureGrid grid = make_grid(quadrature, psi_nm.length_scale());
    const double hbar = params.hbar();
    const double h = 1e-3 * psi_nm.length_scale();
    const auto f = [&](double X) { return psi_nm.mode_factor(mode, X); };
    const auto derivative = [&](double X) {
        return (f(X - 2 * h) - 8.0 * f(X - h) + 8.0 * f(X + h) - f(X + 2 * h)) / (12.0 * h);
    };

    const double norm = integrate_1d([&](double X) { return std::norm(f(X)); }, grid);
    const double mean_x = integrate_1d([&](double X) { return X * std::norm(f(X)); }, grid) / norm;
    const double mean_x2 =
        integrate_1d([&](double X) { return X * X * std::norm(f(X)); }, grid) / norm;
    // <P> = int conj(psi) (-i hbar) psi' dX; real for a normalizable state.
    const Amplitude mean_p_c =
        integrate_1d(
            [&](double X) { return std::conj(f(X)) * Amplitude(0.0, -hbar) * derivative(X); },
            grid) /
        norm;
    const double mean_p2 =
        integrate_1d([&](double X) { return hbar * hbar * std::norm(derivative(X)); }, grid) / norm;

    const double mean_p = mean_p_c.real();
    return {mean_x, mean_p, std::sqrt(std::max(0.0, mean_x2 - mean_x * mean_x)),
            std::sqrt(std::max(0.0, mean_p2 - mean_p * mean_p))};
}

Amplitude overlap(const WaveSpec& a, const WaveSpec& b, const QuadratureSpec& quadrature) {
    if (!(a.params == b.params)) {
        throw std::invalid_argument("overlap: both states must share system parameters");
    }
    const Eigenfunction psi_a(a);
    const Eigenfunction psi_b(b);
    const QuadratureGrid grid = make_grid(quadrature, psi_a.length_scale());
    return integrate_2d([&](double X1, double X2) { return std::conj(psi_a(X1, X2)) * psi_b(X1, X2); },
                        grid);
}

} // namespace dtco
