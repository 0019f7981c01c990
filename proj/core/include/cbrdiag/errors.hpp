#ifndef CBRDIAG_ERRORS_HPP
#define CBRDIAG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cbrdiag {

/// A numeric value fell outside the domain of its fuzzy profile.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A symbolic label or identifier could not be resolved.
class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Missing or inconsistent scoring configuration (e.g. a numeric
/// descriptor scored in enhanced mode without a fuzzy profile).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the codec. Carries every positional error found; a document
/// that fails never yields a partial result.
class DecodeError : public std::runtime_error {
public:
    enum class Kind { Syntax, Version, Validation };

    DecodeError(Kind kind, std::vector<std::string> errors);

    Kind kind() const noexcept { return kind_; }
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    Kind kind_;
    std::vector<std::string> errors_;
};

} // namespace cbrdiag

#endif
