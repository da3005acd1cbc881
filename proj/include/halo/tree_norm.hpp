#pragma once

#include "halo/power_value.hpp"

#include <cstddef>
#include <vector>

namespace halo {

/// Finite full binary tree whose leaves are colored by (summand index,
/// element) pairs. Nodes live in a flat arena; `leaf >= 0` indexes into
/// `leaves`, otherwise `left`/`right` index into `nodes`.
struct TreeDecomposition {
    struct Node {
        int left = -1, right = -1;
        int leaf = -1;
    };
    struct Leaf {
        std::size_t component = 0;
        std::vector<Rat> element;
    };
    std::vector<Node> nodes;
    std::vector<Leaf> leaves;
    int root = -1;

    bool empty() const { return root < 0; }
    std::vector<int> leaf_depths() const;
};

/// Recursive valuation: a leaf is worth its norm, an inner node is worth
/// C * max(children). `leaf_norms[i]` is the norm of `t.leaves[i]`.
PowerValue tree_valuation(const TreeDecomposition& t,
                          const std::vector<PowerValue>& leaf_norms,
                          const PowerValue& c);

/// The infimum over all full binary tree shapes carrying the given leaf
/// norms, computed exactly: the optimum equals the least candidate value
/// C^d * s_i admitting a depth assignment with Kraft sum <= 1. Requires
/// C >= 1 and at least one leaf.
PowerValue best_tree_value(const std::vector<PowerValue>& leaf_norms, const PowerValue& c);

/// A witness tree attaining best_tree_value for the given leaves (leaf i of
/// the result references input index i via Leaf::component; callers fix up
/// the leaf payloads).
TreeDecomposition best_tree_shape(const std::vector<PowerValue>& leaf_norms,
                                  const PowerValue& c);

/// Every full binary tree with k leaves puts its i-th largest leaf at depth
/// >= ceil(log2 i) (1-based), so any tree over k leaves of minimum norm m is
/// worth at least C^{ceil(log2 k)} * m.
PowerValue tree_floor_value(std::size_t k, const PowerValue& min_leaf_norm,
                            const PowerValue& c);

unsigned ceil_log2(std::size_t k);

}  // namespace halo
