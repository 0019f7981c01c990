#include "cbrdiag/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "cbrdiag/errors.hpp"

namespace cbrdiag {

PreparedTarget prepare_target(const Case& target, const ProfileMap& profiles) {
    PreparedTarget out{target, {}};
    for (auto& d : out.prepared.descriptors) {
        auto* numeric = std::get_if<Numeric>(&d.value);
        if (!numeric || !d.flags.imprecise) {
            continue;
        }
        auto it = profiles.find(d.id);
        if (it == profiles.end()) {
            throw ConfigurationError("no fuzzy profile for imprecise descriptor '" + d.id + "'");
        }
        const double original = numeric->magnitude;
        numeric->magnitude = correct_imprecise(original, it->second);
        out.corrections.push_back({d.id, original, numeric->magnitude});
    }
    std::sort(out.corrections.begin(), out.corrections.end(),
              [](const Correction& a, const Correction& b) { return a.descriptor_id < b.descriptor_id; });
    return out;
}

namespace {

bool by_retrieval_rank(const ScoredCase& a, const ScoredCase& b) {
    if (a.m_r != b.m_r) {
        return a.m_r > b.m_r;
    }
    return a.case_id < b.case_id;
}

// Every source scored and ranked; the target must already be prepared for
// the requested mode.
std::vector<ScoredCase> rank_sources(const Case& target, const CaseBase& case_base, ScoringMode mode) {
    const ScoringContext ctx{case_base.taxonomy(), case_base.profiles(), mode};
    std::vector<ScoredCase> ranking;
    for (const Case* source : case_base.sources()) {
        auto r = retrieval_measure(target, *source, ctx);
        ScoredCase sc;
        sc.case_id = source->id;
        sc.m_r = r.score;
        sc.breakdown_r = std::move(r.breakdown);
        ranking.push_back(std::move(sc));
    }
    std::sort(ranking.begin(), ranking.end(), by_retrieval_rank);
    return ranking;
}

Case retrieval_target(const Case& target, const ProfileMap& profiles, ScoringMode mode) {
    if (mode == ScoringMode::Typical) {
        return target;
    }
    return prepare_target(target, profiles).prepared;
}

} // namespace

std::vector<ScoredCase> retrieve(const Case& target, const CaseBase& case_base, ScoringMode mode,
                                 std::size_t top_k) {
    if (top_k == 0) {
        throw std::invalid_argument("top_k must be at least 1");
    }
    auto ranking = rank_sources(retrieval_target(target, case_base.profiles(), mode), case_base, mode);
    if (ranking.size() > top_k) {
        ranking.resize(top_k);
    }
    return ranking;
}

DiagnosisOutcome retrieve_outcome(const Case& target, const CaseBase& case_base, ScoringMode mode,
                                  std::size_t top_k) {
    DiagnosisOutcome outcome;
    outcome.mode = mode;
    if (mode == ScoringMode::Enhanced) {
        outcome.corrections_applied = prepare_target(target, case_base.profiles()).corrections;
    }
    outcome.ranking = retrieve(target, case_base, mode, top_k);
    if (!outcome.ranking.empty()) {
        outcome.selected_case_id = outcome.ranking.front().case_id;
        outcome.solution = case_base.find(*outcome.selected_case_id)->solution;
    }
    return outcome;
}

DiagnosisOutcome diagnose(const Case& target, const CaseBase& case_base, std::size_t top_k, ScoringMode mode) {
    if (top_k == 0) {
        throw std::invalid_argument("top_k must be at least 1");
    }
    DiagnosisOutcome outcome;
    outcome.mode = mode;
    outcome.adapted = true;

    auto prepared = prepare_target(target, case_base.profiles());
    outcome.corrections_applied = prepared.corrections;
    const Case& scored_target = mode == ScoringMode::Enhanced ? prepared.prepared : target;
    outcome.ranking = rank_sources(scored_target, case_base, mode);

    const std::size_t retrieved = std::min(top_k, outcome.ranking.size());
    const ScoredCase* best = nullptr;
    for (std::size_t i = 0; i < retrieved; ++i) {
        auto& sc = outcome.ranking[i];
        auto a = adaptation_measure(prepared.prepared, *case_base.find(sc.case_id), case_base.taxonomy(),
                                    case_base.profiles());
        sc.m_a = a.score;
        sc.breakdown_a = std::move(a.breakdown);
        // Ranking is already ordered by (m_r desc, id asc), so a strict
        // comparison keeps the earlier entry on ties.
        if (!best || *sc.m_a > *best->m_a) {
            best = &sc;
        }
    }
    if (best) {
        outcome.selected_case_id = best->case_id;
        outcome.solution = case_base.find(best->case_id)->solution;
    }
    return outcome;
}

} // namespace cbrdiag
