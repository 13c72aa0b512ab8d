// Discrete-time eigenfunctions of the conserved invariant, their energies,
// density grids and the modified uncertainty products.
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "dtco/model.hpp"
#include "dtco/numerics.hpp"

namespace dtco {

using Amplitude = std::complex<double>;

/// Eigenstate label: n quanta in mode 1, m quanta in mode 2.
struct WaveSpec {
    int n = 0;
    int m = 0;
    SystemParams params;
};

/// Evaluator for one eigenfunction
///
///   Psi_nm = prod_i (Omega_i/(pi hbar))^(1/4) / sqrt(2^y y!) H_y(sqrt(Omega_i/hbar) X_i)
///            * exp(-Omega_i X_i^2 / (2 hbar)) * exp(i eps w_i^2 X_i^2 / (4 hbar))
///
/// with y = n for mode 1 and y = m for mode 2. Construction validates the
/// parameters once (NonexistentStateError outside the Physical regime or
/// with a zero frequency; std::out_of_range for quantum numbers outside
/// [0, kMaxHermiteOrder]) so grids avoid per-point checks.
class Eigenfunction {
public:
    explicit Eigenfunction(const WaveSpec& spec);

    Amplitude operator()(double X1, double X2) const;

    /// One-mode factor, including its phase.
    Amplitude mode_factor(Mode mode, double X) const;

    /// |Psi| assembled without the phase factor.
    double envelope(double X1, double X2) const;

    const WaveSpec& spec() const { return spec_; }
    const ModeSpectrum& spectrum() const { return spectrum_; }

    /// sqrt(hbar / Omega_min): the width scale of the broader mode.
    double length_scale() const;

private:
    struct Factor {
        int order;
        double log_norm; // log of (Omega/(pi hbar))^(1/4) / sqrt(2^y y!)
        double scale;    // sqrt(Omega/hbar)
        double decay;    // Omega/(2 hbar)
        double chirp;    // eps w^2 / (4 hbar)
    };
    static Factor make_factor(int order, double big_omega, double omega_sq, const SystemParams& p);
    double real_factor(const Factor& f, double X) const;
    const Factor& factor(Mode mode) const { return mode == Mode::One ? f1_ : f2_; }

    WaveSpec spec_;
    ModeSpectrum spectrum_;
    Factor f1_{};
    Factor f2_{};
};

Amplitude psi(const WaveSpec& spec, double X1, double X2);

/// Eigenvalue of the invariant: 2 hbar Omega1 (n + 1/2) + 2 hbar Omega2 (m + 1/2).
/// The factor 2 is kept; at eps = 0 this is twice the oscillator energy.
double energy(const WaveSpec& spec);

/// sqrt(hbar/Omega_min) for valid parameters.
double wave_length_scale(const SystemParams& params);

/// Default density-grid half width, 8 sqrt(hbar/Omega_min).
double default_half_width(const SystemParams& params);

struct DensityGrid {
    WaveSpec spec;
    std::vector<double> x1_axis;
    std::vector<double> x2_axis;
    // values[i * x2_axis.size() + j] = |Psi(x1_axis[i], x2_axis[j])|^2
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const { return values[i * x2_axis.size() + j]; }
    double cell_area() const;
    /// Plain Riemann sum of the values times the cell area.
    double riemann_sum() const;
};

/// Density on the square [start, stop]^2 with `points` nodes per axis,
/// endpoints included. Throws std::invalid_argument when points < 11 or
/// stop <= start.
DensityGrid density_grid(const WaveSpec& spec, double start, double stop, int points);

/// Symmetric grid; half_width defaults to default_half_width().
DensityGrid density_grid(const WaveSpec& spec, std::optional<double> half_width = std::nullopt,
                         int points = 201);

/// Closed-form sigma_X sigma_P = hbar (y + 1/2) sqrt(1 + eps^2 w^4 / (4 Omega^2)).
double uncertainty_product(Mode mode, int y, const SystemParams& params);

/// Position and momentum spreads of a one-mode factor by quadrature. The
/// momentum density uses a five-point finite difference of the factor, so
/// it shares nothing with the closed form beyond the wave function itself.
struct UncertaintyMoments {
    double mean_x;
    double mean_p;
    double sigma_x;
    double sigma_p;
    double product() const { return sigma_x * sigma_p; }
};
UncertaintyMoments uncertainty_moments(Mode mode, int y, const SystemParams& params,
                                       const QuadratureSpec& quadrature = {});

/// <a|b> over the normal-coordinate plane. Both specs must share params.
Amplitude overlap(const WaveSpec& a, const WaveSpec& b, const QuadratureSpec& quadrature = {});

} // namespace dtco
