#ifndef CBRDIAG_ADAPTATION_HPP
#define CBRDIAG_ADAPTATION_HPP

#include <string>
#include <vector>

#include "cbrdiag/case_model.hpp"

namespace cbrdiag {

/// Weight 2^k, k in {0,1,2}, given to a descriptor by the failure evidence
/// of its operating modes.
class LambdaWeight {
public:
    static LambdaWeight from_exponent(int k);

    int value() const noexcept { return value_; }

    bool operator==(const LambdaWeight&) const = default;

private:
    explicit LambdaWeight(int value) : value_(value) {}
    int value_;
};

/// Normal/Normal -> 1, one side Abnormal -> 2, both Abnormal -> 4.
/// Unspecified weighs as Normal.
LambdaWeight lambda_weight(OperatingMode target_mode, OperatingMode source_mode);

struct AdaptationTerm {
    std::string descriptor_id;
    int lambda = 1;
    int phi_presence = 0;
    double phi_value = 0.0;
    double weighted = 0.0; // lambda * phi_presence * phi_value

    bool operator==(const AdaptationTerm&) const = default;
};

struct AdaptationScore {
    double score = 0.0;
    std::vector<AdaptationTerm> breakdown;
};

/**
 * Weighted adaptation measure over the co-present descriptors that carry an
 * operating mode on at least one side. Uncertain descriptors take part.
 * Numeric values are compared by fuzzy class, so `target` should already be
 * corrected (see prepare_target). Zero on an empty range.
 */
AdaptationScore adaptation_measure(const Case& target, const Case& source, const Taxonomy& taxonomy,
                                   const ProfileMap& profiles);

double ratio_of(const std::vector<AdaptationTerm>& breakdown);

} // namespace cbrdiag

#endif
