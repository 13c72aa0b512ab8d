#include "dtco/model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace dtco {

SystemParams::SystemParams(double k, double sigma, double epsilon, double hbar)
    : k_(k), sigma_(sigma), epsilon_(epsilon), hbar_(hbar) {
    if (!std::isfinite(k) || !std::isfinite(sigma) || !std::isfinite(epsilon) ||
        !std::isfinite(hbar)) {
        throw std::invalid_argument("system parameters must be finite");
    }
    if (k < 0.0) throw std::invalid_argument(fmt::format("k must be >= 0 (got {})", k));
    if (sigma < 0.0) throw std::invalid_argument(fmt::format("sigma must be >= 0 (got {})", sigma));
    if (epsilon < 0.0) {
        throw std::invalid_argument(fmt::format("epsilon must be >= 0 (got {})", epsilon));
    }
    if (hbar <= 0.0) throw std::invalid_argument(fmt::format("hbar must be > 0 (got {})", hbar));
}

const char* to_string(Regime regime) {
    switch (regime) {
    case Regime::Physical: return "Physical";
    case Regime::Boundary: return "Boundary";
    case Regime::Unphysical: return "Unphysical";
    }
    return "?";
}

namespace {

std::optional<double> discrete_frequency(double omega_sq, double eps) {
    const double shrink = 1.0 - eps * eps * omega_sq / 4.0;
    if (shrink < 0.0) return std::nullopt;
    return std::sqrt(omega_sq) * std::sqrt(shrink);
}

} // namespace

ModeSpectrum mode_spectrum(const SystemParams& params) {
    const double eps = params.epsilon();
    ModeSpectrum s;
    s.omega1 = std::sqrt(params.omega1_sq());
    s.omega2 = std::sqrt(params.omega2_sq());
    s.discrete_omega1 = discrete_frequency(params.omega1_sq(), eps);
    s.discrete_omega2 = discrete_frequency(params.omega2_sq(), eps);
    s.eps2_omega2_sq = eps * eps * params.omega2_sq();
    if (s.eps2_omega2_sq < 4.0) {
        s.regime = Regime::Physical;
    } else if (s.eps2_omega2_sq == 4.0) {
        s.regime = Regime::Boundary;
    } else {
        s.regime = Regime::Unphysical;
    }
    return s;
}

std::optional<CutoffBounds> cutoff_bounds(const SystemParams& params) {
    const double eps = params.epsilon();
    if (eps == 0.0) return std::nullopt;
    const double inv_eps_sq = 1.0 / (eps * eps);
    return CutoffBounds{2.0 * inv_eps_sq - params.k() / 2.0, 4.0 * inv_eps_sq};
}

double nyquist_cutoff_rate(double k, double sigma) {
    if (!(k >= 0.0) || !(sigma >= 0.0)) {
        throw std::invalid_argument("nyquist_cutoff_rate: k and sigma must be >= 0");
    }
    return std::sqrt(sigma / 2.0 + k / 4.0);
}

PhasePoint to_normal(const ParticleState& s) {
    constexpr double r = std::numbers::sqrt2;
    return {(s.x1 + s.x2) / r, (s.p1 + s.p2) / r, (s.x1 - s.x2) / r, (s.p1 - s.p2) / r};
}

ParticleState to_particle(const PhasePoint& s) {
    constexpr double r = std::numbers::sqrt2;
    return {(s.X1 + s.X2) / r, (s.X1 - s.X2) / r, (s.P1 + s.P2) / r, (s.P1 - s.P2) / r};
}

NonexistentStateError::NonexistentStateError(std::string violated, const std::string& detail)
    : std::domain_error(fmt::format("state does not exist: {} ({})", violated, detail)),
      violated_(std::move(violated)) {}

ModeSpectrum require_bound_state(const SystemParams& params) {
    const ModeSpectrum s = mode_spectrum(params);
    const double eps = params.epsilon();
    if (s.regime != Regime::Physical) {
        if (eps * eps * params.k() >= 4.0) {
            throw NonexistentStateError(
                "k >= 4/epsilon^2",
                fmt::format("k = {}, k_max = {}, regime {}", params.k(), 4.0 / (eps * eps),
                            to_string(s.regime)));
        }
        throw NonexistentStateError(
            "sigma >= 2/epsilon^2 - k/2",
            fmt::format("sigma = {}, sigma_max = {}, regime {}", params.sigma(),
                        2.0 / (eps * eps) - params.k() / 2.0, to_string(s.regime)));
    }
    if (!(*s.discrete_omega1 > 0.0) || !(*s.discrete_omega2 > 0.0)) {
        throw NonexistentStateError("k <= 0",
                                    "a zero mode frequency leaves the state non-normalizable");
    }
    return s;
}

} // namespace dtco
