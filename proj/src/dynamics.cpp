#include "dtco/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dtco {

namespace {

double omega_sq_of(Mode mode, const SystemParams& params) {
    return mode == Mode::One ? params.omega1_sq() : params.omega2_sq();
}

struct ModePair {
    double x, p;
};

// X' = (1 - w^2 eps^2) X + eps P and P' = P - w^2 eps X, evaluated as two
// shears (P' first, then X' = X + eps P'). Each shear has determinant exactly
// 1 in floating point, so the invariant carries no drift linear in n.
ModePair step_mode(double x, double p, double omega_sq, double eps) {
    const double p_next = p - omega_sq * eps * x;
    return {x + eps * p_next, p_next};
}

ModePair evolve_mode(double x0, double p0, double omega_sq, double t) {
    if (omega_sq == 0.0) return {x0 + p0 * t, p0};
    const double w = std::sqrt(omega_sq);
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    return {x0 * c + (p0 / w) * s, -x0 * w * s + p0 * c};
}

} // namespace

PhasePoint step(const PhasePoint& s, const SystemParams& params) {
    const double eps = params.epsilon();
    const auto m1 = step_mode(s.X1, s.P1, params.omega1_sq(), eps);
    const auto m2 = step_mode(s.X2, s.P2, params.omega2_sq(), eps);
    return {m1.x, m1.p, m2.x, m2.p};
}

double classical_invariant(const PhasePoint& s, Mode mode, const SystemParams& params) {
    const double w2 = omega_sq_of(mode, params);
    const double x = s.position(mode);
    const double p = s.momentum(mode);
    return p * p + w2 * x * x - params.epsilon() * w2 * p * x;
}

double invariant_position_bound(const PhasePoint& s, Mode mode, const SystemParams& params) {
    const double w2 = omega_sq_of(mode, params);
    const double eps = params.epsilon();
    // Omega^2 = w^2 (1 - eps^2 w^2 / 4) is the determinant of the quadratic form.
    const double big_omega_sq = w2 * (1.0 - eps * eps * w2 / 4.0);
    return std::sqrt(classical_invariant(s, mode, params) / big_omega_sq);
}

MapMatrix map_matrix(double omega_sq, double eps) {
    return {1.0 - omega_sq * eps * eps, eps, -omega_sq * eps, 1.0};
}

Trajectory propagate(const PhasePoint& initial, const SystemParams& params, std::size_t n_steps) {
    Trajectory traj{params, {}};
    if (n_steps >= traj.states.max_size()) {
        throw std::length_error("propagate: n_steps exceeds trajectory capacity");
    }
    traj.states.reserve(n_steps + 1);
    traj.states.push_back(initial);
    for (std::size_t n = 0; n < n_steps; ++n) {
        traj.states.push_back(step(traj.states.back(), params));
    }
    return traj;
}

double recurrence_residual(const Trajectory& traj, Mode mode) {
    const auto& xs = traj.states;
    if (xs.size() < 3) {
        throw std::invalid_argument("recurrence_residual: trajectory needs at least 3 states");
    }
    const double eps = traj.params.epsilon();
    const double coeff = 2.0 - omega_sq_of(mode, traj.params) * eps * eps;
    double worst = 0.0;
    for (std::size_t n = 1; n + 1 < xs.size(); ++n) {
        const double r = xs[n + 1].position(mode) + xs[n - 1].position(mode) -
                         coeff * xs[n].position(mode);
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

PhasePoint exact_continuous_state(const PhasePoint& s, const SystemParams& params, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("exact_continuous_state: t must be >= 0");
    const auto m1 = evolve_mode(s.X1, s.P1, params.omega1_sq(), t);
    const auto m2 = evolve_mode(s.X2, s.P2, params.omega2_sq(), t);
    return {m1.x, m1.p, m2.x, m2.p};
}

} // namespace dtco
