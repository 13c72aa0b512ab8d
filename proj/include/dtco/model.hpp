// Parameters, mode frequencies and coordinate transforms for two identical
// unit-mass particles coupled to each other (sigma) and to the
// environment (k), observed at discrete time steps epsilon.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace dtco {

/// Physical inputs of one experiment. Mass is fixed to 1.
///
/// Construction rejects k < 0, sigma < 0, epsilon < 0, hbar <= 0 and any
/// non-finite value with std::invalid_argument. epsilon == 0 is continuous
/// time.
class SystemParams {
public:
    SystemParams(double k, double sigma, double epsilon, double hbar = 1.0);

    double k() const { return k_; }
    double sigma() const { return sigma_; }
    double epsilon() const { return epsilon_; }
    double hbar() const { return hbar_; }

    /// Squared mode frequencies, taken straight from k and sigma so that no
    /// sqrt round trip enters the maps or the regime test.
    double omega1_sq() const { return k_; }
    double omega2_sq() const { return k_ + 2.0 * sigma_; }

    SystemParams with_sigma(double sigma) const { return {k_, sigma, epsilon_, hbar_}; }
    SystemParams with_epsilon(double epsilon) const { return {k_, sigma_, epsilon, hbar_}; }

    friend bool operator==(const SystemParams&, const SystemParams&) = default;

private:
    double k_;
    double sigma_;
    double epsilon_;
    double hbar_;
};

enum class Mode { One = 1, Two = 2 };

enum class Regime { Physical, Boundary, Unphysical };

const char* to_string(Regime regime);

struct ModeSpectrum {
    double omega1 = 0.0;
    double omega2 = 0.0;
    // Discrete-time frequencies; empty when imaginary (epsilon^2 omega^2 > 4).
    std::optional<double> discrete_omega1;
    std::optional<double> discrete_omega2;
    // epsilon^2 omega2^2, the quantity the regime is read from.
    double eps2_omega2_sq = 0.0;
    Regime regime = Regime::Physical;

    double omega(Mode mode) const { return mode == Mode::One ? omega1 : omega2; }
    std::optional<double> discrete_omega(Mode mode) const {
        return mode == Mode::One ? discrete_omega1 : discrete_omega2;
    }
};

/// omega1 = sqrt(k), omega2 = sqrt(k + 2 sigma),
/// Omega_i = omega_i sqrt(1 - eps^2 omega_i^2 / 4).
///
/// The regime compares eps^2 omega2^2 against 4 exactly, with no tolerance
/// band. k = sigma = 0 is reported as Physical with all frequencies zero.
ModeSpectrum mode_spectrum(const SystemParams& params);

/// Open upper bounds on sigma and k imposed by a nonzero time step.
struct CutoffBounds {
    double sigma_max; // 2/eps^2 - k/2, exclusive
    double k_max;     // 4/eps^2, exclusive
};

/// Empty in continuous time (epsilon == 0): there is no cut-off there.
std::optional<CutoffBounds> cutoff_bounds(const SystemParams& params);

/// Sampling rate sqrt(sigma/2 + k/4) at which eps^2 omega2^2 == 4, i.e. the
/// Nyquist rate of the fastest mode. Throws std::invalid_argument on
/// negative inputs.
double nyquist_cutoff_rate(double k, double sigma);

struct ParticleState {
    double x1 = 0.0;
    double x2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

struct PhasePoint {
    double X1 = 0.0;
    double P1 = 0.0;
    double X2 = 0.0;
    double P2 = 0.0;

    double position(Mode mode) const { return mode == Mode::One ? X1 : X2; }
    double momentum(Mode mode) const { return mode == Mode::One ? P1 : P2; }

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// X1 = (x1 + x2)/sqrt2, X2 = (x1 - x2)/sqrt2, same for momenta.
PhasePoint to_normal(const ParticleState& state);
ParticleState to_particle(const PhasePoint& state);

/// Raised by quantum operations when the parameters admit no normalizable
/// eigenstate: at or beyond the cut-off, or with a zero mode frequency.
class NonexistentStateError : public std::domain_error {
public:
    NonexistentStateError(std::string violated, const std::string& detail);

    /// The inequality that the parameters fail to satisfy.
    const std::string& violated() const { return violated_; }

private:
    std::string violated_;
};

/// Throws NonexistentStateError unless the regime is Physical and both
/// discrete frequencies are strictly positive. Returns the spectrum.
ModeSpectrum require_bound_state(const SystemParams& params);

} // namespace dtco
