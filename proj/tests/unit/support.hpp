// Shared helpers for the unit tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dtco/model.hpp"

namespace dtco::test {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Random Physical parameter point with eps^2 omega2^2 in [0.05, max_load].
inline SystemParams random_physical(std::mt19937_64& rng, double max_load = 3.0) {
    std::uniform_real_distribution<double> k_dist(0.05, 2.0);
    std::uniform_real_distribution<double> sigma_dist(0.0, 2.0);
    std::uniform_real_distribution<double> load_dist(0.05, max_load);
    const double k = k_dist(rng);
    const double sigma = sigma_dist(rng);
    return {k, sigma, std::sqrt(load_dist(rng) / (k + 2.0 * sigma))};
}

// Values from tests/oracle/closed_forms.py (mpmath, 40 digits).
inline constexpr double kOmega1 = 0.31622776601683793;      // k = 0.1
inline constexpr double kOmega2 = 0.83666002653407555;      // k = 0.1, sigma = 0.3
inline constexpr double kDiscreteOmega2Eps2 = 0.458257569495584; // sqrt(0.21)

} // namespace dtco::test
