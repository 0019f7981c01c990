#ifndef CBRDIAG_PIPELINE_HPP
#define CBRDIAG_PIPELINE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cbrdiag/adaptation.hpp"
#include "cbrdiag/case_model.hpp"
#include "cbrdiag/measures.hpp"

namespace cbrdiag {

inline constexpr std::size_t kDefaultTopK = 3;

struct Correction {
    std::string descriptor_id;
    double original = 0.0;
    double corrected = 0.0;

    bool operator==(const Correction&) const = default;
};

struct PreparedTarget {
    Case prepared;
    std::vector<Correction> corrections;
};

/// Replaces every imprecise numeric value by its fuzzy correction. Flags are
/// kept. Throws ConfigurationError when a profile is missing.
PreparedTarget prepare_target(const Case& target, const ProfileMap& profiles);

struct ScoredCase {
    std::string case_id;
    double m_r = 0.0;
    std::optional<double> m_a; // set only for cases that survived retrieval
    std::vector<LocalScores> breakdown_r;
    std::vector<AdaptationTerm> breakdown_a;

    bool operator==(const ScoredCase&) const = default;
};

/// Scores every source case, sorted by m_r descending then case id, and
/// truncated to top_k. Enhanced mode prepares the target first.
std::vector<ScoredCase> retrieve(const Case& target, const CaseBase& case_base, ScoringMode mode,
                                 std::size_t top_k = kDefaultTopK);

struct DiagnosisOutcome {
    std::optional<std::string> selected_case_id;
    std::optional<Solution> solution;
    std::vector<ScoredCase> ranking;
    ScoringMode mode = ScoringMode::Enhanced;
    bool adapted = false;
    std::vector<Correction> corrections_applied;

    bool operator==(const DiagnosisOutcome&) const = default;
};

/**
 * Full diagnosis: retrieve by M_R, compute M_A on the top_k retrieved cases
 * and select the argmax of M_A (ties: higher M_R, then smaller id).
 *
 * The ranking lists every source; only the retrieved ones carry m_a.
 */
DiagnosisOutcome diagnose(const Case& target, const CaseBase& case_base, std::size_t top_k = kDefaultTopK,
                          ScoringMode mode = ScoringMode::Enhanced);

/// Retrieval without adaptation, packaged as an outcome whose selection is
/// the best M_R case.
DiagnosisOutcome retrieve_outcome(const Case& target, const CaseBase& case_base, ScoringMode mode,
                                  std::size_t top_k = kDefaultTopK);

} // namespace cbrdiag

#endif
