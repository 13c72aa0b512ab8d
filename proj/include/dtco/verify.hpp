// Property suite behind `dtco verify`: every closed form checked against a
// numerical oracle.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dtco {

struct VerifyOptions {
    // Overrides for the wave-function and purity quadratures.
    std::optional<int> quad_points;
    std::optional<double> quad_width;
    // Subset of property names; empty runs all.
    std::vector<std::string> only;
};

struct PropertyOutcome {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyReport {
    std::vector<PropertyOutcome> outcomes;

    bool all_passed() const;
};

/// normalization, orthogonality, uncertainty, entropy-oracle, invariants,
/// recurrence, continuum, cutoff, nyquist.
const std::vector<std::string>& verification_properties();

/// Throws std::invalid_argument for unknown names in options.only.
VerifyReport run_verification(const VerifyOptions& options = {});

} // namespace dtco
