#ifndef CBRDIAG_TAXONOMY_HPP
#define CBRDIAG_TAXONOMY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cbrdiag {

struct TaxonomyNode {
    std::string name;
    std::optional<std::string> parent; // nullopt for the root

    bool operator==(const TaxonomyNode&) const = default;
};

/**
 * Rooted component hierarchy.
 *
 * Built from a flat {name, parent} list; construction rejects duplicate
 * names, dangling parents, cycles and multiple roots. An empty taxonomy is
 * allowed (it resolves no labels).
 */
class Taxonomy {
public:
    Taxonomy() = default;

    /// Throws std::invalid_argument describing the first structural defect.
    explicit Taxonomy(std::vector<TaxonomyNode> nodes);

    /// Nodes in the order they were given.
    const std::vector<TaxonomyNode>& nodes() const noexcept { return nodes_; }

    bool empty() const noexcept { return nodes_.empty(); }
    bool contains(std::string_view name) const;

    /// Root has depth 0. Throws LookupError for unknown names.
    std::size_t depth(std::string_view name) const;
    const std::string& root() const;

    /// Deepest node that is an ancestor-or-self of both. Throws LookupError.
    const std::string& lowest_common_ancestor(std::string_view a, std::string_view b) const;

    bool operator==(const Taxonomy& other) const { return nodes_ == other.nodes_; }

private:
    std::size_t index_of(std::string_view name) const;

    std::vector<TaxonomyNode> nodes_;
    std::vector<std::size_t> parent_;  // parent index; self for the root
    std::vector<std::size_t> depth_;
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t root_ = 0;
};

/// Wu-Palmer style depth ratio 2*depth(lca) / (depth(a) + depth(b)).
/// Identical labels score 1; labels whose only common ancestor is the root score 0.
double value_similarity(std::string_view a, std::string_view b, const Taxonomy& taxonomy);

} // namespace cbrdiag

#endif
