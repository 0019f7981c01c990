#ifndef CBRDIAG_FUZZY_HPP
#define CBRDIAG_FUZZY_HPP

#include <optional>
#include <string>
#include <vector>

namespace cbrdiag {

/// Labeled closed interval of a numeric descriptor's domain.
struct FuzzySubset {
    std::string label;
    double lower = 0.0;
    double upper = 0.0;

    bool operator==(const FuzzySubset&) const = default;
};

/**
 * Triangular fuzzy number attached to one numeric descriptor.
 *
 * Membership is 1 at `prototype` and falls linearly to 0 at
 * `prototype +/- half_width`. The subsets partition part of the domain into
 * operating ranges used for class comparison and correction.
 */
struct FuzzyProfile {
    std::string descriptor_id;
    double domain_lower = 0.0;
    double domain_upper = 0.0;
    double prototype = 0.0;
    double half_width = 1.0;
    std::vector<FuzzySubset> subsets;

    /// Human-readable invariant violations; empty when well formed.
    std::vector<std::string> check() const;

    bool contains(double x) const noexcept { return x >= domain_lower && x <= domain_upper; }

    bool operator==(const FuzzyProfile&) const = default;
};

/// Alpha-cut deciding whether a correction snaps to the prototype.
inline constexpr double kCorrectionAlphaCut = 0.5;

// All operations below throw DomainError when x lies outside the profile domain.

double membership(double x, const FuzzyProfile& profile);

/**
 * Label of the subset containing x, or nullopt.
 *
 * When no subset contains the prototype, the gap between the prototype and
 * its nearest neighbouring subsets is folded into them: the nearest subset
 * below becomes [lower, prototype) and the nearest above [prototype, upper].
 * If nothing lies above, the subset below is closed at the prototype.
 */
std::optional<std::string> classify_subset(double x, const FuzzyProfile& profile);

/// Snaps an imprecise value: to the prototype when membership reaches the
/// alpha-cut, otherwise to the outer terminal of its subset. Values in no
/// subset are returned unchanged. Idempotent.
double correct_imprecise(double x, const FuzzyProfile& profile);

bool same_class(double x, double y, const FuzzyProfile& profile);

} // namespace cbrdiag

#endif
