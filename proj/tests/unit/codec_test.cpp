#include <gtest/gtest.h>

#include "cbrdiag/codec.hpp"
#include "cbrdiag/errors.hpp"
#include "support/fixture.hpp"

namespace cbrdiag {
namespace {

using testing::data_path;
using testing::engine_case;
using testing::engine_case_base;
using testing::read_file;

bool any_error_contains(const DecodeError& e, const std::string& needle) {
    for (const auto& msg : e.errors()) {
        if (msg.find(needle) != std::string::npos) return true;
    }
    return false;
}

DecodeError decode_failure(const std::string& text) {
    try {
        decode_case_base(text);
    } catch (const DecodeError& e) {
        return e;
    }
    throw std::runtime_error("document decoded unexpectedly");
}

TEST(DecodeCaseBase, EngineFixture) {
    const auto& cb = engine_case_base();
    EXPECT_EQ(cb.sources().size(), 3u);
    EXPECT_EQ(cb.cases().size(), 4u);
    EXPECT_EQ(cb.profiles().at("ds3"), testing::temperature_profile());
    const auto* ds9 = engine_case("target").find("ds9");
    ASSERT_NE(ds9, nullptr);
    EXPECT_TRUE(ds9->flags.uncertain);
    EXPECT_EQ(ds9->operating_mode, OperatingMode::Abnormal);
    EXPECT_EQ(ds9->state, "Noise presence");
    EXPECT_TRUE(engine_case("target").find("ds3")->flags.imprecise);
    EXPECT_EQ(engine_case("target").find("ds4"), nullptr);
}

TEST(DecodeCaseBase, EmptyCasesIsValid) {
    const auto cb = decode_case_base(R"({"format_version": 1, "taxonomy": [], "fuzzy_profiles": [], "cases": []})");
    EXPECT_TRUE(cb.cases().empty());
    EXPECT_TRUE(cb.taxonomy().empty());
}

TEST(DecodeCaseBase, UnknownVersion) {
    const auto e = decode_failure(R"({"format_version": 99, "taxonomy": [], "fuzzy_profiles": [], "cases": []})");
    EXPECT_EQ(e.kind(), DecodeError::Kind::Version);
    EXPECT_TRUE(any_error_contains(e, "/format_version"));
}

TEST(DecodeCaseBase, SyntaxErrors) {
    EXPECT_EQ(decode_failure("").kind(), DecodeError::Kind::Syntax);
    EXPECT_EQ(decode_failure("{").kind(), DecodeError::Kind::Syntax);
    EXPECT_EQ(decode_failure("[]").kind(), DecodeError::Kind::Syntax);
}

TEST(DecodeCaseBase, ReportsAllStructuralErrorsWithPaths) {
    const auto e = decode_failure(R"({
        "format_version": 1,
        "taxonomy": [{"name": "root", "parent": null}],
        "fuzzy_profiles": [],
        "cases": [
          {"id": "a", "kind": "source", "descriptors": [
             {"id": "d1", "value": {"symbolic": "root", "numeric": 3}},
             {"id": "d2", "value": {"symbolic": "root"}, "operating_mode": "X"}
          ]},
          {"id": 7, "kind": "mystery", "descriptors": {}}
        ]})");
    EXPECT_EQ(e.kind(), DecodeError::Kind::Syntax);
    EXPECT_TRUE(any_error_contains(e, "/cases/0/descriptors/0/value: expected exactly one"));
    EXPECT_TRUE(any_error_contains(e, "/cases/0/descriptors/1/operating_mode"));
    EXPECT_TRUE(any_error_contains(e, "/cases/1/id: expected a string"));
    EXPECT_TRUE(any_error_contains(e, "/cases/1/kind"));
    EXPECT_TRUE(any_error_contains(e, "/cases/1/descriptors: expected an array"));
}

TEST(DecodeCaseBase, RejectsDuplicateIdsPositionally) {
    const auto e = decode_failure(R"({
        "format_version": 1,
        "taxonomy": [{"name": "root", "parent": null}],
        "fuzzy_profiles": [],
        "cases": [
          {"id": "a", "kind": "source", "descriptors": [
             {"id": "d1", "value": {"symbolic": "root"}},
             {"id": "d1", "value": {"symbolic": "root"}}
          ]},
          {"id": "a", "kind": "source", "descriptors": []}
        ]})");
    EXPECT_EQ(e.kind(), DecodeError::Kind::Validation);
    EXPECT_TRUE(any_error_contains(e, "/cases/0/descriptors/1/id: duplicate descriptor id"));
    EXPECT_TRUE(any_error_contains(e, "/cases/1/id: duplicate case id"));
}

TEST(DecodeCaseBase, MissingProfileForImpreciseValue) {
    const auto e = decode_failure(R"({
        "format_version": 1,
        "taxonomy": [],
        "fuzzy_profiles": [],
        "cases": [{"id": "t", "kind": "target", "descriptors": [
            {"id": "ds3", "value": {"numeric": 95, "unit": "C"}, "imprecise": true}]}]})");
    EXPECT_EQ(e.kind(), DecodeError::Kind::Validation);
    EXPECT_TRUE(any_error_contains(e, "/cases/0/descriptors/0: missing fuzzy profile"));
}

TEST(DecodeCaseBase, BrokenTaxonomyIsValidationError) {
    const auto e = decode_failure(R"({"format_version": 1, "fuzzy_profiles": [], "cases": [],
        "taxonomy": [{"name": "a", "parent": null}, {"name": "b", "parent": null}]})");
    EXPECT_EQ(e.kind(), DecodeError::Kind::Validation);
    EXPECT_TRUE(any_error_contains(e, "/taxonomy"));
}

TEST(ParseCaseBase, SkipsSemanticValidation) {
    const auto cb = parse_case_base(R"({"format_version": 1, "taxonomy": [], "fuzzy_profiles": [],
        "cases": [{"id": "t", "kind": "target", "descriptors": [{"id": "d", "value": {"symbolic": "ghost"}}]}]})");
    EXPECT_EQ(cb.validate().size(), 1u);
}

TEST(EncodeCaseBase, RoundTripsFixture) {
    const auto& cb = engine_case_base();
    const std::string text = encode_case_base(cb);
    EXPECT_EQ(decode_case_base(text), cb);
    EXPECT_EQ(encode_case_base(decode_case_base(text)), text);
}

TEST(CaseDocument, TargetFileMatchesBundledTarget) {
    const Case c = decode_case_document(read_file(data_path("engine_target.json")));
    EXPECT_EQ(c, engine_case("target"));
    EXPECT_EQ(decode_case_document(encode_case_document(c)), c);
}

TEST(EncodeOutcome, DiagnosisDocument) {
    const auto o = diagnose(engine_case("target"), engine_case_base(), 3);
    const std::string text = encode_outcome(o);
    EXPECT_NE(text.find("\"selected_case_id\": \"source3\""), std::string::npos);
    EXPECT_NE(text.find("\"m_a\": 2.0"), std::string::npos);
    EXPECT_EQ(decode_outcome(text), o);
    EXPECT_EQ(encode_outcome(decode_outcome(text)), text);
}

TEST(EncodeOutcome, KeysAreSorted) {
    const std::string text = encode_outcome(diagnose(engine_case("target"), engine_case_base(), 3));
    const auto pos = [&](const char* key) { return text.find(std::string("\"") + key + "\":"); };
    EXPECT_LT(pos("adapted"), pos("corrections_applied"));
    EXPECT_LT(pos("corrections_applied"), pos("format_version"));
    EXPECT_LT(pos("format_version"), pos("mode"));
    EXPECT_LT(pos("mode"), pos("ranking"));
    EXPECT_LT(pos("ranking"), pos("selected_case_id"));
}

TEST(EncodeOutcome, EmptyRanking) {
    DiagnosisOutcome o;
    const std::string text = encode_outcome(o);
    EXPECT_NE(text.find("\"ranking\": []"), std::string::npos);
    EXPECT_NE(text.find("\"selected_case_id\": null"), std::string::npos);
    EXPECT_EQ(decode_outcome(text), o);
}

TEST(EncodeOutcome, ScoresSurviveExactly) {
    DiagnosisOutcome o;
    o.ranking.push_back({"x", 4.95 / 6.0, 0.1 + 0.2, {}, {}});
    EXPECT_EQ(decode_outcome(encode_outcome(o)), o);
}

} // namespace
} // namespace cbrdiag
