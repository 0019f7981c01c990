#include "cbrdiag/codec.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "cbrdiag/errors.hpp"

namespace cbrdiag {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<std::string>& errors) {
    std::string out = errors.empty() ? "decode failed" : errors.front();
    if (errors.size() > 1) {
        out += " (and " + std::to_string(errors.size() - 1) + " more)";
    }
    return out;
}

// Collects positional errors while walking a document. Accessors return a
// default value after recording an error so decoding continues and every
// problem is reported at once.
class Reader {
public:
    void error(const std::string& path, const std::string& message) {
        errors_.push_back((path.empty() ? "/" : path) + ": " + message);
    }

    bool ok() const noexcept { return errors_.empty(); }
    std::vector<std::string>& errors() noexcept { return errors_; }

    const json* field(const json& obj, const std::string& path, const char* key, bool required = true) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) error(path, std::string("missing field '") + key + "'");
            return nullptr;
        }
        return &*it;
    }

    bool expect_object(const json& j, const std::string& path) {
        if (!j.is_object()) {
            error(path, "expected an object");
            return false;
        }
        return true;
    }

    bool expect_array(const json& j, const std::string& path) {
        if (!j.is_array()) {
            error(path, "expected an array");
            return false;
        }
        return true;
    }

    std::string string(const json& obj, const std::string& path, const char* key) {
        const json* j = field(obj, path, key);
        if (!j) return {};
        if (!j->is_string()) {
            error(path + "/" + key, "expected a string");
            return {};
        }
        return j->get<std::string>();
    }

    std::optional<std::string> optional_string(const json& obj, const std::string& path, const char* key) {
        const json* j = field(obj, path, key, false);
        if (!j || j->is_null()) return std::nullopt;
        if (!j->is_string()) {
            error(path + "/" + key, "expected a string or null");
            return std::nullopt;
        }
        return j->get<std::string>();
    }

    double number(const json& obj, const std::string& path, const char* key) {
        const json* j = field(obj, path, key);
        if (!j) return 0.0;
        if (!j->is_number()) {
            error(path + "/" + key, "expected a number");
            return 0.0;
        }
        const double v = j->get<double>();
        if (!std::isfinite(v)) {
            error(path + "/" + key, "number is not finite");
        }
        return v;
    }

    bool boolean(const json& obj, const std::string& path, const char* key, bool fallback) {
        const json* j = field(obj, path, key, false);
        if (!j) return fallback;
        if (!j->is_boolean()) {
            error(path + "/" + key, "expected a boolean");
            return fallback;
        }
        return j->get<bool>();
    }

    long integer(const json& obj, const std::string& path, const char* key) {
        const json* j = field(obj, path, key);
        if (!j) return 0;
        if (!j->is_number_integer()) {
            error(path + "/" + key, "expected an integer");
            return 0;
        }
        return j->get<long>();
    }

private:
    std::vector<std::string> errors_;
};

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw DecodeError(DecodeError::Kind::Syntax, {std::string("/: ") + e.what()});
    }
}

void check_version(Reader& r, const json& root) {
    if (!r.expect_object(root, "")) {
        throw DecodeError(DecodeError::Kind::Syntax, std::move(r.errors()));
    }
    const json* v = r.field(root, "", "format_version");
    if (!v) {
        throw DecodeError(DecodeError::Kind::Syntax, std::move(r.errors()));
    }
    if (!v->is_number_integer() || v->get<long>() != kFormatVersion) {
        throw DecodeError(DecodeError::Kind::Version,
                          {"/format_version: unsupported format version " + v->dump() + " (expected " +
                           std::to_string(kFormatVersion) + ")"});
    }
}

// --- operating modes use the "N"/"A"/null notation -------------------------

json encode_mode(OperatingMode mode) {
    switch (mode) {
        case OperatingMode::Normal: return "N";
        case OperatingMode::Abnormal: return "A";
        case OperatingMode::Unspecified: break;
    }
    return nullptr;
}

OperatingMode decode_mode(Reader& r, const json& obj, const std::string& path) {
    const json* j = r.field(obj, path, "operating_mode", false);
    if (!j || j->is_null()) return OperatingMode::Unspecified;
    if (*j == "N") return OperatingMode::Normal;
    if (*j == "A") return OperatingMode::Abnormal;
    r.error(path + "/operating_mode", "expected \"N\", \"A\" or null");
    return OperatingMode::Unspecified;
}

// --- cases ------------------------------------------------------------------

json encode_descriptor(const Descriptor& d) {
    json value;
    if (const auto* s = std::get_if<Symbolic>(&d.value)) {
        value = {{"symbolic", s->label}};
    } else {
        const auto& n = std::get<Numeric>(d.value);
        value = {{"numeric", n.magnitude}, {"unit", n.unit}};
    }
    return {
        {"id", d.id},
        {"name", d.name},
        {"value", std::move(value)},
        {"state", d.state ? json(*d.state) : json(nullptr)},
        {"operating_mode", encode_mode(d.operating_mode)},
        {"imprecise", d.flags.imprecise},
        {"uncertain", d.flags.uncertain},
    };
}

Descriptor decode_descriptor(Reader& r, const json& j, const std::string& path) {
    Descriptor d;
    if (!r.expect_object(j, path)) return d;
    d.id = r.string(j, path, "id");
    if (const json* name = r.field(j, path, "name", false); name && !name->is_null()) {
        if (name->is_string()) {
            d.name = name->get<std::string>();
        } else {
            r.error(path + "/name", "expected a string");
        }
    }
    d.state = r.optional_string(j, path, "state");
    d.operating_mode = decode_mode(r, j, path);
    d.flags.imprecise = r.boolean(j, path, "imprecise", false);
    d.flags.uncertain = r.boolean(j, path, "uncertain", false);

    const std::string vpath = path + "/value";
    const json* v = r.field(j, path, "value");
    if (!v || !r.expect_object(*v, vpath)) return d;
    const bool symbolic = v->contains("symbolic");
    const bool numeric = v->contains("numeric");
    if (symbolic == numeric) {
        r.error(vpath, "expected exactly one of 'symbolic' or 'numeric'");
    } else if (symbolic) {
        d.value = Symbolic{r.string(*v, vpath, "symbolic")};
    } else {
        Numeric n;
        n.magnitude = r.number(*v, vpath, "numeric");
        if (const json* unit = r.field(*v, vpath, "unit", false); unit && !unit->is_null()) {
            if (unit->is_string()) {
                n.unit = unit->get<std::string>();
            } else {
                r.error(vpath + "/unit", "expected a string");
            }
        }
        d.value = std::move(n);
    }
    return d;
}

json encode_solution(const std::optional<Solution>& s) {
    if (!s) return nullptr;
    return {{"failing_component", s->failing_component}, {"action", s->action}};
}

std::optional<Solution> decode_solution(Reader& r, const json& obj, const std::string& path) {
    const json* j = r.field(obj, path, "solution", false);
    if (!j || j->is_null()) return std::nullopt;
    const std::string spath = path + "/solution";
    if (!r.expect_object(*j, spath)) return std::nullopt;
    return Solution{r.string(*j, spath, "failing_component"), r.string(*j, spath, "action")};
}

json encode_case(const Case& c) {
    json descriptors = json::array();
    for (const auto& d : c.descriptors) {
        descriptors.push_back(encode_descriptor(d));
    }
    return {
        {"id", c.id},
        {"kind", std::string(to_string(c.kind))},
        {"descriptors", std::move(descriptors)},
        {"solution", encode_solution(c.solution)},
    };
}

Case decode_case(Reader& r, const json& j, const std::string& path) {
    Case c;
    if (!r.expect_object(j, path)) return c;
    c.id = r.string(j, path, "id");
    const std::string kind = r.string(j, path, "kind");
    if (kind == "target") {
        c.kind = CaseKind::Target;
    } else if (kind == "source") {
        c.kind = CaseKind::Source;
    } else if (j.contains("kind")) {
        r.error(path + "/kind", "expected \"source\" or \"target\"");
    }
    if (const json* ds = r.field(j, path, "descriptors"); ds && r.expect_array(*ds, path + "/descriptors")) {
        for (std::size_t i = 0; i < ds->size(); ++i) {
            c.descriptors.push_back(decode_descriptor(r, (*ds)[i], path + "/descriptors/" + std::to_string(i)));
        }
    }
    c.solution = decode_solution(r, j, path);
    return c;
}

// --- taxonomy and profiles --------------------------------------------------

json encode_profile(const FuzzyProfile& p) {
    json subsets = json::array();
    for (const auto& s : p.subsets) {
        subsets.push_back({{"label", s.label}, {"lower", s.lower}, {"upper", s.upper}});
    }
    return {
        {"descriptor_id", p.descriptor_id}, {"domain_lower", p.domain_lower}, {"domain_upper", p.domain_upper},
        {"prototype", p.prototype},         {"half_width", p.half_width},     {"subsets", std::move(subsets)},
    };
}

FuzzyProfile decode_profile(Reader& r, const json& j, const std::string& path) {
    FuzzyProfile p;
    if (!r.expect_object(j, path)) return p;
    p.descriptor_id = r.string(j, path, "descriptor_id");
    p.domain_lower = r.number(j, path, "domain_lower");
    p.domain_upper = r.number(j, path, "domain_upper");
    p.prototype = r.number(j, path, "prototype");
    p.half_width = r.number(j, path, "half_width");
    if (const json* ss = r.field(j, path, "subsets"); ss && r.expect_array(*ss, path + "/subsets")) {
        for (std::size_t i = 0; i < ss->size(); ++i) {
            const std::string spath = path + "/subsets/" + std::to_string(i);
            const json& s = (*ss)[i];
            if (!r.expect_object(s, spath)) continue;
            p.subsets.push_back({r.string(s, spath, "label"), r.number(s, spath, "lower"),
                                 r.number(s, spath, "upper")});
        }
    }
    return p;
}

struct RawCaseBase {
    std::vector<TaxonomyNode> nodes;
    ProfileMap profiles;
    std::vector<Case> cases;
};

RawCaseBase read_case_base(Reader& r, const json& root) {
    RawCaseBase raw;
    if (const json* tax = r.field(root, "", "taxonomy"); tax && r.expect_array(*tax, "/taxonomy")) {
        for (std::size_t i = 0; i < tax->size(); ++i) {
            const std::string path = "/taxonomy/" + std::to_string(i);
            const json& n = (*tax)[i];
            if (!r.expect_object(n, path)) continue;
            raw.nodes.push_back({r.string(n, path, "name"), r.optional_string(n, path, "parent")});
        }
    }
    if (const json* fp = r.field(root, "", "fuzzy_profiles"); fp && r.expect_array(*fp, "/fuzzy_profiles")) {
        for (std::size_t i = 0; i < fp->size(); ++i) {
            const std::string path = "/fuzzy_profiles/" + std::to_string(i);
            auto p = decode_profile(r, (*fp)[i], path);
            if (!raw.profiles.emplace(p.descriptor_id, p).second) {
                r.error(path + "/descriptor_id", "duplicate fuzzy profile for '" + p.descriptor_id + "'");
            }
        }
    }
    if (const json* cs = r.field(root, "", "cases"); cs && r.expect_array(*cs, "/cases")) {
        for (std::size_t i = 0; i < cs->size(); ++i) {
            raw.cases.push_back(decode_case(r, (*cs)[i], "/cases/" + std::to_string(i)));
        }
    }
    return raw;
}

// --- outcomes ---------------------------------------------------------------

json encode_scored(const ScoredCase& sc) {
    json r = json::array();
    for (const auto& row : sc.breakdown_r) {
        r.push_back({{"descriptor_id", row.descriptor_id},
                     {"phi_value", row.phi_value},
                     {"phi_state", row.phi_state},
                     {"phi_presence", row.phi_presence},
                     {"phi_om", row.phi_om},
                     {"product", row.product}});
    }
    json a = json::array();
    for (const auto& term : sc.breakdown_a) {
        a.push_back({{"descriptor_id", term.descriptor_id},
                     {"lambda", term.lambda},
                     {"phi_presence", term.phi_presence},
                     {"phi_value", term.phi_value},
                     {"weighted", term.weighted}});
    }
    return {
        {"case_id", sc.case_id},
        {"m_r", sc.m_r},
        {"m_a", sc.m_a ? json(*sc.m_a) : json(nullptr)},
        {"breakdown_r", std::move(r)},
        {"breakdown_a", std::move(a)},
    };
}

ScoredCase decode_scored(Reader& r, const json& j, const std::string& path) {
    ScoredCase sc;
    if (!r.expect_object(j, path)) return sc;
    sc.case_id = r.string(j, path, "case_id");
    sc.m_r = r.number(j, path, "m_r");
    if (const json* ma = r.field(j, path, "m_a", false); ma && !ma->is_null()) {
        sc.m_a = r.number(j, path, "m_a");
    }
    if (const json* br = r.field(j, path, "breakdown_r"); br && r.expect_array(*br, path + "/breakdown_r")) {
        for (std::size_t i = 0; i < br->size(); ++i) {
            const std::string p = path + "/breakdown_r/" + std::to_string(i);
            const json& row = (*br)[i];
            if (!r.expect_object(row, p)) continue;
            sc.breakdown_r.push_back({r.string(row, p, "descriptor_id"), r.number(row, p, "phi_value"),
                                      static_cast<int>(r.integer(row, p, "phi_state")),
                                      static_cast<int>(r.integer(row, p, "phi_presence")),
                                      static_cast<int>(r.integer(row, p, "phi_om")), r.number(row, p, "product")});
        }
    }
    if (const json* ba = r.field(j, path, "breakdown_a"); ba && r.expect_array(*ba, path + "/breakdown_a")) {
        for (std::size_t i = 0; i < ba->size(); ++i) {
            const std::string p = path + "/breakdown_a/" + std::to_string(i);
            const json& t = (*ba)[i];
            if (!r.expect_object(t, p)) continue;
            sc.breakdown_a.push_back({r.string(t, p, "descriptor_id"), static_cast<int>(r.integer(t, p, "lambda")),
                                      static_cast<int>(r.integer(t, p, "phi_presence")),
                                      r.number(t, p, "phi_value"), r.number(t, p, "weighted")});
        }
    }
    return sc;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

} // namespace

DecodeError::DecodeError(Kind kind, std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), kind_(kind), errors_(std::move(errors)) {}

CaseBase parse_case_base(std::string_view text) {
    const json root = parse_json(text);
    Reader r;
    check_version(r, root);
    auto raw = read_case_base(r, root);
    if (!r.ok()) {
        throw DecodeError(DecodeError::Kind::Syntax, std::move(r.errors()));
    }
    try {
        return CaseBase(Taxonomy(std::move(raw.nodes)), std::move(raw.profiles), std::move(raw.cases));
    } catch (const std::invalid_argument& e) {
        throw DecodeError(DecodeError::Kind::Validation, {std::string("/taxonomy: ") + e.what()});
    }
}

CaseBase decode_case_base(std::string_view text) {
    CaseBase cb = parse_case_base(text);
    std::vector<std::string> errors;

    for (const auto& [id, profile] : cb.profiles()) {
        for (const auto& problem : profile.check()) {
            errors.push_back("/fuzzy_profiles[descriptor_id=" + id + "]: " + problem);
        }
    }

    std::set<std::string_view> case_ids;
    const auto& cases = cb.cases();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& c = cases[i];
        const std::string cpath = "/cases/" + std::to_string(i);
        if (!case_ids.insert(c.id).second) {
            errors.push_back(cpath + "/id: duplicate case id '" + c.id + "'");
        }
        // Positions are resolved per descriptor so duplicates point at the
        // repeated entry rather than the first one.
        std::set<std::string_view> seen;
        for (std::size_t j = 0; j < c.descriptors.size(); ++j) {
            const Descriptor& d = c.descriptors[j];
            const std::string dpath = cpath + "/descriptors/" + std::to_string(j);
            if (!seen.insert(d.id).second) {
                errors.push_back(dpath + "/id: duplicate descriptor id '" + d.id + "'");
                continue;
            }
            Case single{c.id, c.kind, {d}, std::nullopt};
            for (const auto& v : validate_case(single, cb.taxonomy(), cb.profiles())) {
                errors.push_back(dpath + ": " + v.message);
            }
        }
        Case shell{c.id, c.kind, {}, c.solution};
        for (const auto& v : validate_case(shell, cb.taxonomy(), cb.profiles())) {
            errors.push_back(cpath + "/solution: " + v.message);
        }
    }
    if (!errors.empty()) {
        throw DecodeError(DecodeError::Kind::Validation, std::move(errors));
    }
    return cb;
}

std::string encode_case_base(const CaseBase& case_base) {
    json taxonomy = json::array();
    for (const auto& n : case_base.taxonomy().nodes()) {
        taxonomy.push_back({{"name", n.name}, {"parent", n.parent ? json(*n.parent) : json(nullptr)}});
    }
    json profiles = json::array();
    for (const auto& [id, p] : case_base.profiles()) {
        profiles.push_back(encode_profile(p));
    }
    json cases = json::array();
    for (const auto& c : case_base.cases()) {
        cases.push_back(encode_case(c));
    }
    return dump({
        {"format_version", kFormatVersion},
        {"taxonomy", std::move(taxonomy)},
        {"fuzzy_profiles", std::move(profiles)},
        {"cases", std::move(cases)},
    });
}

Case decode_case_document(std::string_view text) {
    const json root = parse_json(text);
    Reader r;
    check_version(r, root);
    Case c;
    if (const json* j = r.field(root, "", "case")) {
        c = decode_case(r, *j, "/case");
    }
    if (!r.ok()) {
        throw DecodeError(DecodeError::Kind::Syntax, std::move(r.errors()));
    }
    return c;
}

std::string encode_case_document(const Case& c) {
    return dump({{"format_version", kFormatVersion}, {"case", encode_case(c)}});
}

std::string encode_outcome(const DiagnosisOutcome& outcome) {
    json ranking = json::array();
    for (const auto& sc : outcome.ranking) {
        ranking.push_back(encode_scored(sc));
    }
    json corrections = json::array();
    for (const auto& c : outcome.corrections_applied) {
        corrections.push_back(
            {{"descriptor_id", c.descriptor_id}, {"original", c.original}, {"corrected", c.corrected}});
    }
    return dump({
        {"format_version", kFormatVersion},
        {"mode", std::string(to_string(outcome.mode))},
        {"adapted", outcome.adapted},
        {"selected_case_id", outcome.selected_case_id ? json(*outcome.selected_case_id) : json(nullptr)},
        {"solution", encode_solution(outcome.solution)},
        {"corrections_applied", std::move(corrections)},
        {"ranking", std::move(ranking)},
    });
}

DiagnosisOutcome decode_outcome(std::string_view text) {
    const json root = parse_json(text);
    Reader r;
    check_version(r, root);
    DiagnosisOutcome out;
    const std::string mode = r.string(root, "", "mode");
    if (auto m = parse_scoring_mode(mode)) {
        out.mode = *m;
    } else if (root.contains("mode")) {
        r.error("/mode", "expected \"typical\" or \"enhanced\"");
    }
    out.adapted = r.boolean(root, "", "adapted", false);
    out.selected_case_id = r.optional_string(root, "", "selected_case_id");
    out.solution = decode_solution(r, root, "");
    if (const json* cs = r.field(root, "", "corrections_applied");
        cs && r.expect_array(*cs, "/corrections_applied")) {
        for (std::size_t i = 0; i < cs->size(); ++i) {
            const std::string p = "/corrections_applied/" + std::to_string(i);
            const json& c = (*cs)[i];
            if (!r.expect_object(c, p)) continue;
            out.corrections_applied.push_back(
                {r.string(c, p, "descriptor_id"), r.number(c, p, "original"), r.number(c, p, "corrected")});
        }
    }
    if (const json* rk = r.field(root, "", "ranking"); rk && r.expect_array(*rk, "/ranking")) {
        for (std::size_t i = 0; i < rk->size(); ++i) {
            out.ranking.push_back(decode_scored(r, (*rk)[i], "/ranking/" + std::to_string(i)));
        }
    }
    if (!r.ok()) {
        throw DecodeError(DecodeError::Kind::Syntax, std::move(r.errors()));
    }
    return out;
}

} // namespace cbrdiag
