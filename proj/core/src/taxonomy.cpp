#include "cbrdiag/taxonomy.hpp"

#include <stdexcept>

#include "cbrdiag/errors.hpp"

namespace cbrdiag {

Taxonomy::Taxonomy(std::vector<TaxonomyNode> nodes) : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes_[i].name.empty()) {
            throw std::invalid_argument("taxonomy node " + std::to_string(i) + " has an empty name");
        }
        if (!index_.emplace(nodes_[i].name, i).second) {
            throw std::invalid_argument("duplicate taxonomy node '" + nodes_[i].name + "'");
        }
    }

    parent_.assign(n, 0);
    bool have_root = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& parent = nodes_[i].parent;
        if (!parent) {
            if (have_root) {
                throw std::invalid_argument("taxonomy has more than one root ('" + nodes_[root_].name + "', '" +
                                            nodes_[i].name + "')");
            }
            have_root = true;
            root_ = i;
            parent_[i] = i;
            continue;
        }
        auto it = index_.find(*parent);
        if (it == index_.end()) {
            throw std::invalid_argument("taxonomy node '" + nodes_[i].name + "' has unknown parent '" + *parent +
                                        "'");
        }
        parent_[i] = it->second;
    }
    if (n > 0 && !have_root) {
        throw std::invalid_argument("taxonomy has no root");
    }

    // Depths by walking up; a walk longer than n nodes means a cycle.
    constexpr std::size_t unknown = static_cast<std::size_t>(-1);
    depth_.assign(n, unknown);
    if (n > 0) {
        depth_[root_] = 0;
    }
    std::vector<std::size_t> path;
    for (std::size_t i = 0; i < n; ++i) {
        path.clear();
        std::size_t cur = i;
        while (depth_[cur] == unknown) {
            path.push_back(cur);
            if (path.size() > n) {
                throw std::invalid_argument("taxonomy contains a cycle through '" + nodes_[i].name + "'");
            }
            cur = parent_[cur];
        }
        std::size_t d = depth_[cur];
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            depth_[*it] = ++d;
        }
    }
}

bool Taxonomy::contains(std::string_view name) const {
    return index_.find(std::string(name)) != index_.end();
}

std::size_t Taxonomy::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        throw LookupError("unknown taxonomy label '" + std::string(name) + "'");
    }
    return it->second;
}

std::size_t Taxonomy::depth(std::string_view name) const {
    return depth_[index_of(name)];
}

const std::string& Taxonomy::root() const {
    if (nodes_.empty()) {
        throw LookupError("empty taxonomy has no root");
    }
    return nodes_[root_].name;
}

const std::string& Taxonomy::lowest_common_ancestor(std::string_view a, std::string_view b) const {
    std::size_t x = index_of(a);
    std::size_t y = index_of(b);
    while (depth_[x] > depth_[y]) {
        x = parent_[x];
    }
    while (depth_[y] > depth_[x]) {
        y = parent_[y];
    }
    while (x != y) {
        x = parent_[x];
        y = parent_[y];
    }
    return nodes_[x].name;
}

double value_similarity(std::string_view a, std::string_view b, const Taxonomy& taxonomy) {
    const std::size_t da = taxonomy.depth(a);
    const std::size_t db = taxonomy.depth(b);
    if (a == b) {
        return 1.0;
    }
    const std::size_t dl = taxonomy.depth(taxonomy.lowest_common_ancestor(a, b));
    // a != b implies da + db > 0
    return 2.0 * static_cast<double>(dl) / static_cast<double>(da + db);
}

} // namespace cbrdiag
