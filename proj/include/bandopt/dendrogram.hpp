#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bandopt/rng.hpp"

namespace bandopt {

// One agglomeration step: clusters a and b (a < b) merge into new_id with
// the recorded linkage value (mean squared coordinate difference across the
// two clusters). `exact` marks values from a brute-force evaluation rather
// than a sampling estimate.
struct Merge {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t new_id = 0;
    double value = 0.0;
    bool exact = false;
};

// Binary merge tree over n leaves: leaves are ids 0..n-1, merge t creates
// id n+t, and a full tree has exactly n-1 merges.
struct Dendrogram {
    std::int64_t n_leaves = 0;
    std::vector<Merge> merges;

    void validate() const {
        if (static_cast<std::int64_t>(merges.size()) != n_leaves - 1)
            throw std::invalid_argument("Dendrogram: expected n-1 merges");
        for (std::size_t t = 0; t < merges.size(); ++t)
            if (merges[t].new_id != n_leaves + static_cast<std::int64_t>(t))
                throw std::invalid_argument("Dendrogram: non-sequential merge ids");
    }
};

// Pairwise leaf path lengths (tree distance), as a flat lower-triangular
// array indexed by pair_index.
inline std::size_t pair_index(std::int64_t i, std::int64_t j) {
    if (i < j) std::swap(i, j);
    return static_cast<std::size_t>(i * (i - 1) / 2 + j);
}

inline std::vector<int> leaf_distances(const Dendrogram& tree) {
    tree.validate();
    const std::int64_t n = tree.n_leaves;
    const std::int64_t total = 2 * n - 1;
    std::vector<std::int64_t> left(static_cast<std::size_t>(total), -1);
    std::vector<std::int64_t> right(static_cast<std::size_t>(total), -1);
    for (const auto& m : tree.merges) {
        left[static_cast<std::size_t>(m.new_id)] = m.a;
        right[static_cast<std::size_t>(m.new_id)] = m.b;
    }
    // depth of every node below the root
    std::vector<int> depth(static_cast<std::size_t>(total), 0);
    for (std::int64_t node = total - 1; node >= n; --node) {
        depth[static_cast<std::size_t>(left[static_cast<std::size_t>(node)])] =
            depth[static_cast<std::size_t>(node)] + 1;
        depth[static_cast<std::size_t>(right[static_cast<std::size_t>(node)])] =
            depth[static_cast<std::size_t>(node)] + 1;
    }
    // leaves under each node, built bottom-up
    std::vector<std::vector<std::int64_t>> leaves(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < n; ++i) leaves[static_cast<std::size_t>(i)] = {i};
    std::vector<int> dist(static_cast<std::size_t>(n * (n - 1) / 2), 0);
    for (const auto& m : tree.merges) {
        const auto& la = leaves[static_cast<std::size_t>(m.a)];
        const auto& lb = leaves[static_cast<std::size_t>(m.b)];
        const int dm = depth[static_cast<std::size_t>(m.new_id)];
        for (const std::int64_t x : la)
            for (const std::int64_t y : lb)
                dist[pair_index(x, y)] = depth[static_cast<std::size_t>(x)] +
                                         depth[static_cast<std::size_t>(y)] - 2 * dm;
        auto& merged = leaves[static_cast<std::size_t>(m.new_id)];
        merged.reserve(la.size() + lb.size());
        merged.insert(merged.end(), la.begin(), la.end());
        merged.insert(merged.end(), lb.begin(), lb.end());
        leaves[static_cast<std::size_t>(m.a)].clear();
        leaves[static_cast<std::size_t>(m.b)].clear();
    }
    return dist;
}

// Uniform random recursive merging: at every step two distinct surviving
// clusters are chosen uniformly. Baseline for the tree-accuracy metric.
inline Dendrogram random_tree(std::int64_t n_leaves, Rng& rng) {
    Dendrogram tree;
    tree.n_leaves = n_leaves;
    std::vector<std::int64_t> alive(static_cast<std::size_t>(n_leaves));
    for (std::int64_t i = 0; i < n_leaves; ++i) alive[static_cast<std::size_t>(i)] = i;
    std::int64_t next_id = n_leaves;
    while (alive.size() > 1) {
        const std::int64_t ia = rng.below(static_cast<std::int64_t>(alive.size()));
        std::int64_t ib = rng.below(static_cast<std::int64_t>(alive.size()) - 1);
        if (ib >= ia) ++ib;
        std::int64_t a = alive[static_cast<std::size_t>(ia)];
        std::int64_t b = alive[static_cast<std::size_t>(ib)];
        if (a > b) std::swap(a, b);
        alive.erase(alive.begin() + std::max(ia, ib));
        alive.erase(alive.begin() + std::min(ia, ib));
        alive.push_back(next_id);
        tree.merges.push_back({a, b, next_id, 0.0, true});
        ++next_id;
    }
    return tree;
}

}  // namespace bandopt
