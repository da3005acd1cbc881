#pragma once

#include "halo/power_value.hpp"

#include <optional>
#include <vector>

namespace halo {

/// Limits for the infimum searches. Defaults are desk-scale; every consumer
/// echoes the effective values in its report.
struct SearchBudget {
    int max_parts = 0;        // 0: derive from the target (2 * |target|)
    int max_leaves = 8;       // tree searches
    int kernel_radius = 0;    // quotient-norm coefficient box; 0: derive from
                              // the upper bound so the search is certified
    long max_nodes = 2000000; // hard cap on visited search nodes
    std::optional<std::vector<Rat>> candidates;  // explicit part candidates
};

/// Lower/upper bounds for an infimum-valued norm. `gap` is set when the
/// search budget ran out before the bounds met.
struct BoundsInfo {
    PowerValue lower;
    PowerValue upper;
    bool gap = false;

    bool bounds_meet() const { return PowerValue::cmp(lower, upper) == Cmp::Equal; }
};

}  // namespace halo
