// Classical discrete-time evolution of the normal modes.
#pragma once

#include <cstddef>
#include <vector>

#include "dtco/model.hpp"

namespace dtco {

/// One step of the discrete map, per mode:
///   X' = (1 - w^2 eps^2) X + eps P
///   P' = -w^2 eps X + P
/// computed as P' first and X' = X + eps P', which is the same map. The map is defined in every
/// regime; beyond the cut-off it is exponentially unstable.
PhasePoint step(const PhasePoint& state, const SystemParams& params);

/// I = P^2 + w^2 X^2 - eps w^2 P X for the given mode. Conserved exactly by
/// step(); reduces to 2H at eps = 0.
double classical_invariant(const PhasePoint& state, Mode mode, const SystemParams& params);

/// Largest |X| reachable on the level set of the invariant, sqrt(I)/Omega.
/// Only meaningful in the Physical regime with Omega > 0.
double invariant_position_bound(const PhasePoint& state, Mode mode, const SystemParams& params);

/// Map matrix of one mode, row-major {a, b, c, d}: (X', P') = [[a, b], [c, d]] (X, P).
struct MapMatrix {
    double a, b, c, d;
    double determinant() const { return a * d - b * c; }
};
MapMatrix map_matrix(double omega_sq, double epsilon);

struct Trajectory {
    SystemParams params;
    std::vector<PhasePoint> states; // states[n] at t = n * epsilon

    double time(std::size_t n) const { return static_cast<double>(n) * params.epsilon(); }
};

/// Iterates step() n_steps times; the result holds n_steps + 1 states.
/// Throws std::length_error when n_steps + 1 cannot be stored.
Trajectory propagate(const PhasePoint& initial, const SystemParams& params, std::size_t n_steps);

/// max_n |X_{n+1} + X_{n-1} - (2 - w^2 eps^2) X_n| over the trajectory.
/// Throws std::invalid_argument for trajectories shorter than 3.
double recurrence_residual(const Trajectory& trajectory, Mode mode);

/// Continuous-time solution at time t >= 0; free drift for w = 0.
PhasePoint exact_continuous_state(const PhasePoint& initial, const SystemParams& params, double t);

} // namespace dtco
