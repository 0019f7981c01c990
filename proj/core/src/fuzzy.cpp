#include "cbrdiag/fuzzy.hpp"

#include <cmath>
#include <sstream>

#include "cbrdiag/errors.hpp"

namespace cbrdiag {

namespace {

void require_in_domain(double x, const FuzzyProfile& profile) {
    if (!profile.contains(x)) {
        std::ostringstream os;
        os << "value " << x << " outside domain [" << profile.domain_lower << ", " << profile.domain_upper
           << "] of descriptor '" << profile.descriptor_id << "'";
        throw DomainError(os.str());
    }
}

struct ClassInterval {
    const FuzzySubset* subset;
    double lower;
    double upper;
    bool upper_open;

    bool covers(double x) const noexcept { return x >= lower && (upper_open ? x < upper : x <= upper); }
};

// Subset intervals as used for classification, with the prototype gap
// folded into the neighbouring subsets.
std::vector<ClassInterval> class_intervals(const FuzzyProfile& profile) {
    std::vector<ClassInterval> out;
    out.reserve(profile.subsets.size());
    const double p = profile.prototype;
    const FuzzySubset* below = nullptr;
    const FuzzySubset* above = nullptr;
    bool prototype_covered = false;
    for (const auto& s : profile.subsets) {
        out.push_back({&s, s.lower, s.upper, false});
        if (s.lower <= p && p <= s.upper) {
            prototype_covered = true;
        } else if (s.upper < p) {
            if (!below || s.upper > below->upper) below = &s;
        } else if (!above || s.lower < above->lower) {
            above = &s;
        }
    }
    if (prototype_covered) {
        return out;
    }
    for (auto& iv : out) {
        if (iv.subset == below) {
            iv.upper = p;
            iv.upper_open = above != nullptr;
        } else if (iv.subset == above) {
            iv.lower = p;
        }
    }
    return out;
}

const FuzzySubset* find_subset(double x, const FuzzyProfile& profile) {
    for (const auto& iv : class_intervals(profile)) {
        if (iv.covers(x)) {
            return iv.subset;
        }
    }
    return nullptr;
}

} // namespace

std::vector<std::string> FuzzyProfile::check() const {
    std::vector<std::string> problems;
    if (!(domain_lower <= domain_upper)) {
        problems.push_back("domain lower bound exceeds upper bound");
    }
    if (!(domain_lower <= prototype && prototype <= domain_upper)) {
        problems.push_back("prototype outside domain");
    }
    if (!(half_width > 0.0)) {
        problems.push_back("half_width must be positive");
    }
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const auto& s = subsets[i];
        if (!(s.lower <= s.upper)) {
            problems.push_back("subset '" + s.label + "' has lower > upper");
        }
        if (s.lower < domain_lower || s.upper > domain_upper) {
            problems.push_back("subset '" + s.label + "' lies outside the domain");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto& t = subsets[j];
            if (s.label == t.label) {
                problems.push_back("duplicate subset label '" + s.label + "'");
            }
            if (s.lower <= t.upper && t.lower <= s.upper) {
                problems.push_back("subsets '" + t.label + "' and '" + s.label + "' overlap");
            }
        }
    }
    return problems;
}

double membership(double x, const FuzzyProfile& profile) {
    require_in_domain(x, profile);
    const double distance = std::fabs(x - profile.prototype);
    if (distance >= profile.half_width) {
        return 0.0;
    }
    return 1.0 - distance / profile.half_width;
}

std::optional<std::string> classify_subset(double x, const FuzzyProfile& profile) {
    require_in_domain(x, profile);
    if (const auto* s = find_subset(x, profile)) {
        return s->label;
    }
    return std::nullopt;
}

double correct_imprecise(double x, const FuzzyProfile& profile) {
    if (membership(x, profile) >= kCorrectionAlphaCut) {
        return profile.prototype;
    }
    const auto* s = find_subset(x, profile);
    if (!s) {
        return x;
    }
    // Outer terminal: the bound farthest from the prototype.
    return std::fabs(s->lower - profile.prototype) > std::fabs(s->upper - profile.prototype) ? s->lower
                                                                                             : s->upper;
}

bool same_class(double x, double y, const FuzzyProfile& profile) {
    require_in_domain(x, profile);
    require_in_domain(y, profile);
    const auto* a = find_subset(x, profile);
    return a != nullptr && a == find_subset(y, profile);
}

} // namespace cbrdiag
