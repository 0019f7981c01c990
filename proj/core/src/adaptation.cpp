#include "cbrdiag/adaptation.hpp"

#include <stdexcept>

#include "cbrdiag/measures.hpp"

namespace cbrdiag {

LambdaWeight LambdaWeight::from_exponent(int k) {
    if (k < 0 || k > 2) {
        throw std::out_of_range("lambda exponent must be 0, 1 or 2");
    }
    return LambdaWeight(1 << k);
}

LambdaWeight lambda_weight(OperatingMode target_mode, OperatingMode source_mode) {
    const int abnormal =
        (target_mode == OperatingMode::Abnormal ? 1 : 0) + (source_mode == OperatingMode::Abnormal ? 1 : 0);
    return LambdaWeight::from_exponent(abnormal);
}

double ratio_of(const std::vector<AdaptationTerm>& breakdown) {
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& term : breakdown) {
        numerator += term.weighted;
        denominator += term.phi_presence;
    }
    return denominator > 0.0 ? numerator / denominator : 0.0;
}

AdaptationScore adaptation_measure(const Case& target, const Case& source, const Taxonomy& taxonomy,
                                   const ProfileMap& profiles) {
    AdaptationScore result;
    for (const auto& pair : align(target, source)) {
        if (pair.target->operating_mode == OperatingMode::Unspecified &&
            pair.source->operating_mode == OperatingMode::Unspecified) {
            continue;
        }
        AdaptationTerm term;
        term.descriptor_id = pair.descriptor_id;
        term.lambda = lambda_weight(pair.target->operating_mode, pair.source->operating_mode).value();
        // Uncertainty does not exclude here: presence is plain co-presence.
        term.phi_presence = phi_presence(pair, ScoringMode::Typical);
        auto it = profiles.find(pair.descriptor_id);
        term.phi_value = phi_value(pair, taxonomy, it == profiles.end() ? nullptr : &it->second,
                                   ScoringMode::Enhanced);
        term.weighted = term.lambda * term.phi_presence * term.phi_value;
        result.breakdown.push_back(std::move(term));
    }
    result.score = ratio_of(result.breakdown);
    return result;
}

} // namespace cbrdiag
