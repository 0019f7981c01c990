#ifndef CBRDIAG_MEASURES_HPP
#define CBRDIAG_MEASURES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbrdiag/case_model.hpp"

namespace cbrdiag {

/// Typical is the baseline: no fuzzy correction, no uncertainty exclusion,
/// numeric values compared by normalized distance. Enhanced excludes
/// uncertain descriptors and compares numerics by fuzzy class.
enum class ScoringMode { Typical, Enhanced };

std::string_view to_string(ScoringMode mode);
/// Accepts "typical" / "enhanced"; nullopt otherwise.
std::optional<ScoringMode> parse_scoring_mode(std::string_view text);

struct ScoringContext {
    const Taxonomy& taxonomy;
    const ProfileMap& profiles;
    ScoringMode mode = ScoringMode::Enhanced;
};

/// Local similarity factors of one co-present descriptor.
struct LocalScores {
    std::string descriptor_id;
    double phi_value = 0.0;
    int phi_state = 0;
    int phi_presence = 0;
    int phi_om = 0;
    double product = 0.0;

    bool operator==(const LocalScores&) const = default;
};

int phi_presence(const std::optional<AlignmentPair>& pair, ScoringMode mode);
int phi_state(const AlignmentPair& pair);
int phi_om(const AlignmentPair& pair);

/// Throws LookupError for labels unknown to the taxonomy and
/// ConfigurationError for an enhanced numeric comparison without a profile.
double phi_value(const AlignmentPair& pair, const Taxonomy& taxonomy, const FuzzyProfile* profile,
                 ScoringMode mode);

struct RetrievalScore {
    double score = 0.0;
    std::vector<LocalScores> breakdown; // one row per co-present descriptor, by id
};

/**
 * Global retrieval measure: sum of the local products over the sum of the
 * presence factors. Zero when no descriptor contributes.
 *
 * The score is accumulated over `breakdown` in order, so
 * ratio_of(breakdown) reproduces it exactly.
 */
RetrievalScore retrieval_measure(const Case& target, const Case& source, const ScoringContext& ctx);

/// Recomputes the ratio from a breakdown in the same summation order.
double ratio_of(const std::vector<LocalScores>& breakdown);

} // namespace cbrdiag

#endif
