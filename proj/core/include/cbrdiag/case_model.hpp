#ifndef CBRDIAG_CASE_MODEL_HPP
#define CBRDIAG_CASE_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cbrdiag/fuzzy.hpp"
#include "cbrdiag/taxonomy.hpp"

namespace cbrdiag {

/**
 * Operating mode of the component a descriptor refers to.
 *
 * Unspecified is a blank cell in the source data. It is never treated as
 * evidence of normal operation when comparing modes.
 */
enum class OperatingMode { Normal, Abnormal, Unspecified };

std::string_view to_string(OperatingMode mode);

/// Imprecision and uncertainty may co-occur. Incompleteness has no flag:
/// it is the absence of the descriptor from a case.
struct ImperfectionFlags {
    bool imprecise = false;
    bool uncertain = false;

    bool operator==(const ImperfectionFlags&) const = default;
};

/// A label naming a node of the case base taxonomy.
struct Symbolic {
    std::string label;

    bool operator==(const Symbolic&) const = default;
};

struct Numeric {
    double magnitude = 0.0;
    std::string unit;

    bool operator==(const Numeric&) const = default;
};

using DescriptorValue = std::variant<Symbolic, Numeric>;

struct Descriptor {
    std::string id;
    std::string name;
    DescriptorValue value;
    std::optional<std::string> state;
    OperatingMode operating_mode = OperatingMode::Unspecified;
    ImperfectionFlags flags;

    bool is_numeric() const noexcept { return std::holds_alternative<Numeric>(value); }

    bool operator==(const Descriptor&) const = default;
};

struct Solution {
    std::string failing_component;
    std::string action;

    bool operator==(const Solution&) const = default;
};

enum class CaseKind { Source, Target };

std::string_view to_string(CaseKind kind);

/**
 * A problem description plus, for source cases, the solution that fixed it.
 *
 * Descriptors are held in insertion order; ids are expected to be unique,
 * which validate_case() checks and the codec enforces.
 */
struct Case {
    std::string id;
    CaseKind kind = CaseKind::Source;
    std::vector<Descriptor> descriptors;
    std::optional<Solution> solution;

    /// Returns the first descriptor with the given id, or nullptr.
    const Descriptor* find(std::string_view descriptor_id) const noexcept;

    bool operator==(const Case&) const = default;
};

/// Non-owning view of a descriptor present in both the target and a source.
/// Only valid while both cases are alive.
struct AlignmentPair {
    std::string descriptor_id;
    const Descriptor* target = nullptr;
    const Descriptor* source = nullptr;
};

using ProfileMap = std::map<std::string, FuzzyProfile, std::less<>>;

struct Violation {
    std::string case_id;
    std::string descriptor_id; // empty for case-level violations
    std::string message;

    bool operator==(const Violation&) const = default;
};

std::string to_string(const Violation& violation);

/// Reports duplicate descriptor ids, labels unknown to the taxonomy,
/// imprecise numerics without a profile and numerics outside their profile
/// domain. An empty report means the case is valid.
std::vector<Violation> validate_case(const Case& c, const Taxonomy& taxonomy, const ProfileMap& profiles);

/// Pairs of descriptors present in both cases, sorted by id ascending.
std::vector<AlignmentPair> align(const Case& target, const Case& source);

/**
 * Immutable snapshot of the knowledge used for retrieval: every stored case
 * (sources and any bundled targets), the component taxonomy and the fuzzy
 * profiles of numeric descriptors.
 */
class CaseBase {
public:
    CaseBase() = default;
    CaseBase(Taxonomy taxonomy, ProfileMap profiles, std::vector<Case> cases);

    const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
    const ProfileMap& profiles() const noexcept { return profiles_; }
    const std::vector<Case>& cases() const noexcept { return cases_; }

    /// Source cases in stored order.
    std::vector<const Case*> sources() const;
    const Case* find(std::string_view case_id) const noexcept;

    /// Runs validate_case over every stored case and checks case ids are unique.
    std::vector<Violation> validate() const;

    bool operator==(const CaseBase&) const = default;

private:
    Taxonomy taxonomy_;
    ProfileMap profiles_;
    std::vector<Case> cases_;
};

} // namespace cbrdiag

#endif
