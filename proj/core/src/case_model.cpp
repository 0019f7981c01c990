#include "cbrdiag/case_model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cbrdiag {

std::string_view to_string(OperatingMode mode) {
    switch (mode) {
        case OperatingMode::Normal: return "normal";
        case OperatingMode::Abnormal: return "abnormal";
        case OperatingMode::Unspecified: return "unspecified";
    }
    return "unspecified";
}

std::string_view to_string(CaseKind kind) {
    return kind == CaseKind::Source ? "source" : "target";
}

const Descriptor* Case::find(std::string_view descriptor_id) const noexcept {
    auto it = std::find_if(descriptors.begin(), descriptors.end(),
                           [&](const Descriptor& d) { return d.id == descriptor_id; });
    return it == descriptors.end() ? nullptr : &*it;
}

std::string to_string(const Violation& violation) {
    std::string out = "case '" + violation.case_id + "'";
    if (!violation.descriptor_id.empty()) {
        out += ", descriptor '" + violation.descriptor_id + "'";
    }
    return out + ": " + violation.message;
}

std::vector<Violation> validate_case(const Case& c, const Taxonomy& taxonomy, const ProfileMap& profiles) {
    std::vector<Violation> report;
    auto add = [&](const std::string& descriptor_id, std::string message) {
        report.push_back({c.id, descriptor_id, std::move(message)});
    };

    std::set<std::string_view> seen;
    for (const auto& d : c.descriptors) {
        if (!seen.insert(d.id).second) {
            add(d.id, "duplicate descriptor id");
        }
        if (const auto* sym = std::get_if<Symbolic>(&d.value)) {
            if (!taxonomy.contains(sym->label)) {
                add(d.id, "unknown taxonomy label '" + sym->label + "'");
            }
            continue;
        }
        const double x = std::get<Numeric>(d.value).magnitude;
        auto it = profiles.find(d.id);
        if (it == profiles.end()) {
            if (d.flags.imprecise) {
                add(d.id, "missing fuzzy profile for imprecise numeric value");
            }
        } else if (!it->second.contains(x)) {
            std::ostringstream os;
            os << "numeric value " << x << " outside profile domain [" << it->second.domain_lower << ", "
               << it->second.domain_upper << "]";
            add(d.id, os.str());
        }
    }

    if (c.solution && !taxonomy.contains(c.solution->failing_component)) {
        add("", "unknown failing component '" + c.solution->failing_component + "'");
    }
    if (c.kind == CaseKind::Target && c.solution) {
        add("", "target case carries a solution");
    }
    return report;
}

std::vector<AlignmentPair> align(const Case& target, const Case& source) {
    std::vector<AlignmentPair> pairs;
    for (const auto& t : target.descriptors) {
        if (const auto* s = source.find(t.id)) {
            pairs.push_back({t.id, &t, s});
        }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const AlignmentPair& a, const AlignmentPair& b) { return a.descriptor_id < b.descriptor_id; });
    // A duplicated id in the target would pair twice; keep the first.
    pairs.erase(std::unique(pairs.begin(), pairs.end(),
                            [](const AlignmentPair& a, const AlignmentPair& b) {
                                return a.descriptor_id == b.descriptor_id;
                            }),
                pairs.end());
    return pairs;
}

CaseBase::CaseBase(Taxonomy taxonomy, ProfileMap profiles, std::vector<Case> cases)
    : taxonomy_(std::move(taxonomy)), profiles_(std::move(profiles)), cases_(std::move(cases)) {}

std::vector<const Case*> CaseBase::sources() const {
    std::vector<const Case*> out;
    for (const auto& c : cases_) {
        if (c.kind == CaseKind::Source) {
            out.push_back(&c);
        }
    }
    return out;
}

const Case* CaseBase::find(std::string_view case_id) const noexcept {
    auto it = std::find_if(cases_.begin(), cases_.end(), [&](const Case& c) { return c.id == case_id; });
    return it == cases_.end() ? nullptr : &*it;
}

std::vector<Violation> CaseBase::validate() const {
    std::vector<Violation> report;
    for (const auto& [id, profile] : profiles_) {
        if (profile.descriptor_id != id) {
            report.push_back({"", id, "profile registered under a different descriptor id"});
        }
        for (auto& problem : profile.check()) {
            report.push_back({"", id, "fuzzy profile: " + problem});
        }
    }
    std::set<std::string_view> ids;
    for (const auto& c : cases_) {
        if (!ids.insert(c.id).second) {
            report.push_back({c.id, "", "duplicate case id"});
        }
        auto r = validate_case(c, taxonomy_, profiles_);
        report.insert(report.end(), r.begin(), r.end());
    }
    return report;
}

} // namespace cbrdiag
