#include "cbrdiag/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "cbrdiag/errors.hpp"

namespace cbrdiag {

std::string_view to_string(ScoringMode mode) {
    return mode == ScoringMode::Typical ? "typical" : "enhanced";
}

std::optional<ScoringMode> parse_scoring_mode(std::string_view text) {
    if (text == "typical") return ScoringMode::Typical;
    if (text == "enhanced") return ScoringMode::Enhanced;
    return std::nullopt;
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

} // namespace

int phi_presence(const std::optional<AlignmentPair>& pair, ScoringMode mode) {
    if (!pair) {
        return 0;
    }
    if (mode == ScoringMode::Enhanced && (pair->target->flags.uncertain || pair->source->flags.uncertain)) {
        return 0;
    }
    return 1;
}

int phi_state(const AlignmentPair& pair) {
    const auto& a = pair.target->state;
    const auto& b = pair.source->state;
    if (!a && !b) {
        return 1;
    }
    return a && b && iequals(*a, *b) ? 1 : 0;
}

int phi_om(const AlignmentPair& pair) {
    return pair.target->operating_mode == pair.source->operating_mode ? 1 : 0;
}

double phi_value(const AlignmentPair& pair, const Taxonomy& taxonomy, const FuzzyProfile* profile,
                 ScoringMode mode) {
    const auto& tv = pair.target->value;
    const auto& sv = pair.source->value;
    if (tv.index() != sv.index()) {
        return 0.0;
    }
    if (const auto* ts = std::get_if<Symbolic>(&tv)) {
        return value_similarity(ts->label, std::get<Symbolic>(sv).label, taxonomy);
    }

    const double x = std::get<Numeric>(tv).magnitude;
    const double y = std::get<Numeric>(sv).magnitude;
    if (mode == ScoringMode::Enhanced) {
        if (!profile) {
            throw ConfigurationError("no fuzzy profile for numeric descriptor '" + pair.descriptor_id +
                                     "' in enhanced mode");
        }
        return same_class(x, y, *profile) ? 1.0 : 0.0;
    }
    if (!profile || !(profile->domain_upper > profile->domain_lower)) {
        return x == y ? 1.0 : 0.0;
    }
    const double sim = 1.0 - std::fabs(x - y) / (profile->domain_upper - profile->domain_lower);
    return std::clamp(sim, 0.0, 1.0);
}

double ratio_of(const std::vector<LocalScores>& breakdown) {
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& row : breakdown) {
        numerator += row.product;
        denominator += row.phi_presence;
    }
    return denominator > 0.0 ? numerator / denominator : 0.0;
}

RetrievalScore retrieval_measure(const Case& target, const Case& source, const ScoringContext& ctx) {
    RetrievalScore result;
    for (const auto& pair : align(target, source)) {
        LocalScores row;
        row.descriptor_id = pair.descriptor_id;
        row.phi_presence = phi_presence(pair, ctx.mode);
        if (row.phi_presence == 1) {
            auto it = ctx.profiles.find(pair.descriptor_id);
            const FuzzyProfile* profile = it == ctx.profiles.end() ? nullptr : &it->second;
            row.phi_value = phi_value(pair, ctx.taxonomy, profile, ctx.mode);
            row.phi_state = phi_state(pair);
            row.phi_om = phi_om(pair);
            row.product = row.phi_value * row.phi_state * row.phi_presence * row.phi_om;
        }
        result.breakdown.push_back(std::move(row));
    }
    result.score = ratio_of(result.breakdown);
    return result;
}

} // namespace cbrdiag
