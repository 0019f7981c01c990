#ifndef CBRDIAG_CODEC_HPP
#define CBRDIAG_CODEC_HPP

#include <string>
#include <string_view>

#include "cbrdiag/case_model.hpp"
#include "cbrdiag/pipeline.hpp"

namespace cbrdiag {

inline constexpr int kFormatVersion = 1;

// Documents are JSON. Keys are emitted sorted, ids ascending where the
// model is a set, and doubles in shortest round-trip form, so equal values
// always encode to identical bytes.
//
// Every decoder throws DecodeError listing all positional errors found
// ("/cases/2/descriptors/0/value: ...").

/// Structural decode only; no semantic validation. Used by `validate` to
/// report violations separately from syntax errors.
CaseBase parse_case_base(std::string_view text);

/// parse_case_base followed by CaseBase::validate(); violations are
/// reported as DecodeError::Kind::Validation.
CaseBase decode_case_base(std::string_view text);
std::string encode_case_base(const CaseBase& case_base);

/// Standalone target document: {"format_version": 1, "case": {...}}.
Case decode_case_document(std::string_view text);
std::string encode_case_document(const Case& c);

std::string encode_outcome(const DiagnosisOutcome& outcome);
DiagnosisOutcome decode_outcome(std::string_view text);

} // namespace cbrdiag

#endif
