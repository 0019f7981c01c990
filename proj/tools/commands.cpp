#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cbrdiag/adaptation.hpp"
#include "cbrdiag/codec.hpp"
#include "cbrdiag/errors.hpp"
#include "cbrdiag/measures.hpp"
#include "cbrdiag/pipeline.hpp"

namespace cbrdiag::cli {

namespace {

// Carries an exit status out of a command after its message was printed.
struct CommandFailure {
    int status;
};

struct Options {
    std::string case_base_path;
    std::string target;
    std::string source_id;
    std::string mode = "enhanced";
    std::size_t top_k = kDefaultTopK;
    bool adapt = false;
    std::string format = "machine";
};

class Session {
public:
    Session(std::istream& in, std::ostream& out, std::ostream& err) : in_(in), out_(out), err_(err) {}

    int validate(const Options& opt);
    int query(const Options& opt);
    int explain(const Options& opt);

    [[noreturn]] void fail(int status, const std::string& message) {
        err_ << "cbrdiag: " << message << "\n";
        throw CommandFailure{status};
    }

    int guarded(int (Session::*command)(const Options&), const Options& opt);

private:
    std::string read_text(const std::string& path);
    CaseBase load_case_base(const std::string& path);
    Case resolve_target(const CaseBase& cb, const std::string& target);
    ScoringMode resolve_mode(const std::string& mode);
    void check_format(const std::string& format);

    std::istream& in_;
    std::ostream& out_;
    std::ostream& err_;
};

std::string Session::read_text(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << in_.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        fail(kIoError, "cannot read '" + path + "'");
    }
    buffer << file.rdbuf();
    return buffer.str();
}

int decode_status(const DecodeError& e) {
    return e.kind() == DecodeError::Kind::Validation ? kValidationError : kIoError;
}

CaseBase Session::load_case_base(const std::string& path) {
    const std::string text = read_text(path);
    try {
        return decode_case_base(text);
    } catch (const DecodeError& e) {
        for (const auto& msg : e.errors()) {
            err_ << path << msg << "\n";
        }
        throw CommandFailure{decode_status(e)};
    }
}

Case Session::resolve_target(const CaseBase& cb, const std::string& target) {
    if (const Case* c = cb.find(target)) {
        return *c;
    }
    std::error_code ec;
    if (target == "-" || std::filesystem::is_regular_file(target, ec)) {
        const std::string text = read_text(target);
        try {
            Case c = decode_case_document(text);
            auto report = validate_case(c, cb.taxonomy(), cb.profiles());
            if (!report.empty()) {
                for (const auto& v : report) {
                    err_ << target << ": " << to_string(v) << "\n";
                }
                throw CommandFailure{kValidationError};
            }
            return c;
        } catch (const DecodeError& e) {
            for (const auto& msg : e.errors()) {
                err_ << target << msg << "\n";
            }
            throw CommandFailure{decode_status(e)};
        }
    }
    fail(kValidationError, "unknown target '" + target + "' (neither a case id nor a readable file)");
}

ScoringMode Session::resolve_mode(const std::string& mode) {
    auto m = parse_scoring_mode(mode);
    if (!m) {
        fail(kConfigurationError, "unknown mode '" + mode + "' (expected typical or enhanced)");
    }
    return *m;
}

void Session::check_format(const std::string& format) {
    if (format != "machine" && format != "table") {
        fail(kConfigurationError, "unknown format '" + format + "' (expected table or machine)");
    }
}

int Session::guarded(int (Session::*command)(const Options&), const Options& opt) {
    try {
        return (this->*command)(opt);
    } catch (const CommandFailure& f) {
        return f.status;
    } catch (const ConfigurationError& e) {
        err_ << "cbrdiag: configuration error: " << e.what() << "\n";
        return kConfigurationError;
    } catch (const DomainError& e) {
        err_ << "cbrdiag: domain error: " << e.what() << "\n";
        return kValidationError;
    } catch (const LookupError& e) {
        err_ << "cbrdiag: lookup error: " << e.what() << "\n";
        return kValidationError;
    }
}

// --- validate ----------------------------------------------------------------

int Session::validate(const Options& opt) {
    const std::string text = read_text(opt.case_base_path);
    CaseBase cb;
    try {
        cb = parse_case_base(text);
    } catch (const DecodeError& e) {
        for (const auto& msg : e.errors()) {
            out_ << opt.case_base_path << msg << "\n";
        }
        return decode_status(e);
    }
    const auto report = cb.validate();
    if (report.empty()) {
        out_ << "OK\n";
        return kSuccess;
    }
    for (const auto& v : report) {
        out_ << to_string(v) << "\n";
    }
    return kValidationError;
}

// --- query -------------------------------------------------------------------

void print_outcome_table(std::ostream& os, const DiagnosisOutcome& outcome) {
    os << fmt::format("mode: {}  adapted: {}\n", to_string(outcome.mode), outcome.adapted ? "yes" : "no");
    for (const auto& c : outcome.corrections_applied) {
        os << fmt::format("corrected {}: {} -> {}\n", c.descriptor_id, c.original, c.corrected);
    }
    os << fmt::format("{:<4} {:<16} {:>12} {:>12}\n", "rank", "case", "M_R", "M_A");
    std::size_t rank = 1;
    for (const auto& sc : outcome.ranking) {
        os << fmt::format("{:<4} {:<16} {:>12} {:>12}\n", rank++, sc.case_id, sc.m_r,
                          sc.m_a ? fmt::format("{}", *sc.m_a) : std::string("-"));
    }
    if (outcome.selected_case_id) {
        os << "selected: " << *outcome.selected_case_id << "\n";
        if (outcome.solution) {
            os << "failing component: " << outcome.solution->failing_component << "\n"
               << "action: " << outcome.solution->action << "\n";
        }
    } else {
        os << "selected: none\n";
    }
}

int Session::query(const Options& opt) {
    const ScoringMode mode = resolve_mode(opt.mode);
    check_format(opt.format);
    if (opt.top_k == 0) {
        fail(kConfigurationError, "--top-k must be at least 1");
    }
    const CaseBase cb = load_case_base(opt.case_base_path);
    const Case target = resolve_target(cb, opt.target);
    const DiagnosisOutcome outcome =
        opt.adapt ? diagnose(target, cb, opt.top_k, mode) : retrieve_outcome(target, cb, mode, opt.top_k);
    if (opt.format == "table") {
        print_outcome_table(out_, outcome);
    } else {
        out_ << encode_outcome(outcome);
    }
    return kSuccess;
}

// --- explain -----------------------------------------------------------------

int Session::explain(const Options& opt) {
    const ScoringMode mode = resolve_mode(opt.mode);
    check_format(opt.format);
    const CaseBase cb = load_case_base(opt.case_base_path);
    const Case target = resolve_target(cb, opt.target);
    const Case* source = cb.find(opt.source_id);
    if (!source) {
        fail(kValidationError, "unknown source '" + opt.source_id + "'");
    }

    // Same target preparation as query: retrieval in enhanced mode and
    // adaptation always see the corrected target.
    const Case prepared = prepare_target(target, cb.profiles()).prepared;
    const Case& retrieval_target = mode == ScoringMode::Enhanced ? prepared : target;
    const auto r = retrieval_measure(retrieval_target, *source, {cb.taxonomy(), cb.profiles(), mode});
    const auto a = adaptation_measure(prepared, *source, cb.taxonomy(), cb.profiles());

    if (opt.format == "machine") {
        nlohmann::json rows_r = nlohmann::json::array();
        double sum_product = 0.0, sum_presence = 0.0;
        for (const auto& row : r.breakdown) {
            sum_product += row.product;
            sum_presence += row.phi_presence;
            rows_r.push_back({{"descriptor_id", row.descriptor_id}, {"phi_value", row.phi_value},
                              {"phi_state", row.phi_state},         {"phi_presence", row.phi_presence},
                              {"phi_om", row.phi_om},               {"product", row.product},
                              {"sum_product", sum_product},         {"sum_presence", sum_presence}});
        }
        nlohmann::json rows_a = nlohmann::json::array();
        double sum_weighted = 0.0;
        sum_presence = 0.0;
        for (const auto& term : a.breakdown) {
            sum_weighted += term.weighted;
            sum_presence += term.phi_presence;
            rows_a.push_back({{"descriptor_id", term.descriptor_id}, {"lambda", term.lambda},
                              {"phi_presence", term.phi_presence},   {"phi_value", term.phi_value},
                              {"weighted", term.weighted},           {"sum_weighted", sum_weighted},
                              {"sum_presence", sum_presence}});
        }
        nlohmann::json doc = {
            {"format_version", kFormatVersion},
            {"mode", std::string(to_string(mode))},
            {"target_id", target.id},
            {"source_id", source->id},
            {"retrieval", {{"rows", std::move(rows_r)}, {"m_r", r.score}}},
            {"adaptation", {{"rows", std::move(rows_a)}, {"m_a", a.score}}},
        };
        out_ << doc.dump(2) << "\n";
        return kSuccess;
    }

    out_ << fmt::format("target '{}' vs source '{}' (mode {})\n\n", target.id, source->id, to_string(mode));
    out_ << "retrieval measure\n";
    out_ << fmt::format("{:<10} {:>10} {:>6} {:>9} {:>6} {:>10} {:>12} {:>13}\n", "descriptor", "phi_value",
                        "state", "presence", "om", "product", "sum_product", "sum_presence");
    double sum_product = 0.0, sum_presence = 0.0;
    for (const auto& row : r.breakdown) {
        sum_product += row.product;
        sum_presence += row.phi_presence;
        out_ << fmt::format("{:<10} {:>10} {:>6} {:>9} {:>6} {:>10} {:>12} {:>13}\n", row.descriptor_id,
                            row.phi_value, row.phi_state, row.phi_presence, row.phi_om, row.product, sum_product,
                            sum_presence);
    }
    out_ << fmt::format("M_R = {}\n\n", r.score);

    out_ << "adaptation measure\n";
    out_ << fmt::format("{:<10} {:>6} {:>9} {:>10} {:>10} {:>13} {:>13}\n", "descriptor", "lambda", "presence",
                        "phi_value", "weighted", "sum_weighted", "sum_presence");
    double sum_weighted = 0.0;
    sum_presence = 0.0;
    for (const auto& term : a.breakdown) {
        sum_weighted += term.weighted;
        sum_presence += term.phi_presence;
        out_ << fmt::format("{:<10} {:>6} {:>9} {:>10} {:>10} {:>13} {:>13}\n", term.descriptor_id, term.lambda,
                            term.phi_presence, term.phi_value, term.weighted, sum_weighted, sum_presence);
    }
    out_ << fmt::format("M_A = {}\n", a.score);
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Case-based retrieval and diagnosis over imperfect knowledge"};
    app.name("cbrdiag");
    app.require_subcommand(1);

    Options opt;

    auto* validate = app.add_subcommand("validate", "Check a case-base document and list every violation");
    validate->add_option("--case-base", opt.case_base_path, "Case-base document (\"-\" for stdin)")->required();

    auto add_query_options = [&](CLI::App* cmd) {
        cmd->add_option("--case-base", opt.case_base_path, "Case-base document (\"-\" for stdin)")->required();
        cmd->add_option("--target", opt.target, "Target case id in the case base, or a target document path")
            ->required();
        cmd->add_option("--mode", opt.mode, "typical | enhanced")->capture_default_str();
        cmd->add_option("--format", opt.format, "table | machine")->capture_default_str();
    };

    auto* query = app.add_subcommand("query", "Retrieve (and optionally adapt) source cases for a target");
    add_query_options(query);
    query->add_option("--top-k", opt.top_k, "Number of retrieved cases")->capture_default_str();
    query->add_flag("--adapt", opt.adapt, "Refine the retrieved cases by the adaptation measure");

    auto* explain = app.add_subcommand("explain", "Per-descriptor breakdown of both measures for one source");
    add_query_options(explain);
    explain->add_option("--source", opt.source_id, "Source case id")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kIoError;
    }

    Session session(in, out, err);
    if (*validate) return session.guarded(&Session::validate, opt);
    if (*query) return session.guarded(&Session::query, opt);
    return session.guarded(&Session::explain, opt);
}

} // namespace cbrdiag::cli
