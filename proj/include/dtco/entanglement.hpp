// Ground-state linear entanglement entropy between the two particles.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtco/model.hpp"
#include "dtco/numerics.hpp"

namespace dtco {

struct GammaBeta {
    double gamma;
    double beta;
};

/// With S = Omega1 + Omega2, P = Omega1 Omega2 and t = eps^2 sigma^2 / (4 S):
///   gamma = S/4 + P/S + t,   beta = S/4 - P/S + t.
/// beta is evaluated as ((Omega1 - Omega2)^2 + eps^2 sigma^2) / (4 S), the
/// same quantity without the cancellation, so it is exactly 0 at sigma = 0.
/// Throws NonexistentStateError outside the Physical regime or when a
/// frequency vanishes.
GammaBeta gamma_beta(const SystemParams& params);

struct EntropyResult {
    double gamma;
    double beta;
    double s_linear; // 1 - (gamma - beta)/sqrt(gamma^2 - beta^2), in [0, 1)
    Regime regime;
    SystemParams params;
};

EntropyResult linear_entropy(const SystemParams& params);

enum class Subsystem { One = 1, Two = 2 };

struct PurityResult {
    double purity;         // Tr rho_j^2 at the requested resolution
    double refined_purity; // same with 2N - 1 points per axis
    double trace;          // Tr rho_j, ideally 1
    int points_per_axis;
    bool converged;        // |purity - refined_purity| <= 1e-5
    std::string warning;   // non-empty when not converged
};

/// 61 points per axis over [-8L, 8L], L = sqrt(hbar/Omega_min).
QuadratureSpec default_purity_quadrature();

/// Brute-force purity of the reduced ground state of particle `keep`.
///
/// Psi_00 is tabulated on the particle-coordinate product grid (through
/// to_normal), the other particle is traced out to give rho_keep on the
/// grid, and Tr rho^2 is the weighted double sum over it. The result is the
/// 4D product-rule value of
///   int Psi(x1,x2) Psi*(x1',x2) Psi(x1',x2') Psi*(x1,x2') dx1 dx1' dx2 dx2'.
/// The grid is then refined once and the two values compared.
PurityResult purity_oracle(const SystemParams& params,
                           const QuadratureSpec& quadrature = default_purity_quadrature(),
                           Subsystem keep = Subsystem::One);

struct SweepRow {
    double k;
    double sigma;
    double epsilon;
    Regime regime;
    // Present only for Physical rows with both frequencies positive.
    std::optional<double> gamma;
    std::optional<double> beta;
    std::optional<double> s_linear;
    // 2/eps^2 - k/2; absent in continuous time.
    std::optional<double> sigma_cut;
};

struct SweepTable {
    std::vector<double> k_values;
    std::vector<double> sigma_values;
    std::vector<double> epsilon_values;
    double hbar = 1.0;
    // Ordered by k, then epsilon, then sigma (sigma varies fastest).
    std::vector<SweepRow> rows;
};

/// One row per (k, sigma, epsilon). Rows at or beyond the cut-off are
/// flagged by regime, never thrown. Throws std::invalid_argument for an
/// empty axis or invalid parameter values.
SweepTable entropy_sweep(std::span<const double> k_values, std::span<const double> sigma_values,
                         std::span<const double> epsilon_values, double hbar = 1.0);

} // namespace dtco
