#include "halo/tree_norm.hpp"

#include "halo/normed_set.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace halo {

namespace {

void collect_depths(const TreeDecomposition& t, int node, int depth,
                    std::vector<int>& out) {
    const auto& n = t.nodes[node];
    if (n.leaf >= 0) {
        if (static_cast<std::size_t>(n.leaf) >= out.size()) out.resize(n.leaf + 1, -1);
        out[n.leaf] = depth;
        return;
    }
    collect_depths(t, n.left, depth + 1, out);
    collect_depths(t, n.right, depth + 1, out);
}

PowerValue pow_int(const PowerValue& c, unsigned d) {
    PowerValue r = PowerValue::one();
    for (unsigned i = 0; i < d; ++i) r = r * c;
    return r;
}

}  // namespace

unsigned ceil_log2(std::size_t k) {
    unsigned d = 0;
    std::size_t cap = 1;
    while (cap < k) {
        cap <<= 1;
        ++d;
    }
    return d;
}

std::vector<int> TreeDecomposition::leaf_depths() const {
    std::vector<int> out(leaves.size(), -1);
    if (root >= 0) collect_depths(*this, root, 0, out);
    return out;
}

PowerValue tree_valuation(const TreeDecomposition& t,
                          const std::vector<PowerValue>& leaf_norms,
                          const PowerValue& c) {
    if (t.empty()) throw std::invalid_argument("tree_valuation: empty tree");
    if (leaf_norms.size() != t.leaves.size())
        throw std::invalid_argument("tree_valuation: leaf/norm mismatch");
    // Value = max over leaves of C^depth * leaf norm.
    auto depths = t.leaf_depths();
    std::vector<PowerValue> values;
    values.reserve(leaf_norms.size());
    for (std::size_t i = 0; i < leaf_norms.size(); ++i) {
        if (depths[i] < 0) throw std::invalid_argument("tree_valuation: unreachable leaf");
        values.push_back(pow_int(c, static_cast<unsigned>(depths[i])) * leaf_norms[i]);
    }
    return max_norm(values);
}

PowerValue tree_floor_value(std::size_t k, const PowerValue& min_leaf_norm,
                            const PowerValue& c) {
    return pow_int(c, ceil_log2(k)) * min_leaf_norm;
}

namespace {

// Max depth allowed for each leaf so that C^d * s <= v; returns false when
// even depth 0 exceeds v. dcap bounds the search (a full binary tree with k
// leaves has depth <= k - 1).
bool depth_allowance(const std::vector<PowerValue>& norms, const PowerValue& c,
                     const PowerValue& v, unsigned dcap, std::vector<unsigned>& out) {
    out.assign(norms.size(), 0);
    for (std::size_t i = 0; i < norms.size(); ++i) {
        PowerValue cur = norms[i];
        if (!cmp_is_leq(PowerValue::cmp(cur, v))) return false;
        unsigned d = 0;
        while (d < dcap) {
            PowerValue next = cur * c;
            if (!cmp_is_leq(PowerValue::cmp(next, v))) break;
            cur = next;
            ++d;
        }
        out[i] = d;
    }
    return true;
}

bool kraft_feasible(const std::vector<unsigned>& depths) {
    Rat sum = 0;
    for (unsigned d : depths) sum += Rat(Int(1), Int(1) << d);
    return sum <= 1;
}

}  // namespace

PowerValue best_tree_value(const std::vector<PowerValue>& leaf_norms, const PowerValue& c) {
    if (leaf_norms.empty()) throw std::invalid_argument("best_tree_value: no leaves");
    if (PowerValue::cmp(c, PowerValue::one()) == Cmp::Less)
        throw std::invalid_argument("best_tree_value: C must be >= 1");
    for (const auto& s : leaf_norms) {
        if (s.is_interval())
            throw std::invalid_argument("best_tree_value: leaf norms must be exact");
    }
    if (leaf_norms.size() == 1) return leaf_norms[0];
    const unsigned dcap = static_cast<unsigned>(leaf_norms.size() - 1);
    // Candidate optimum values: C^d * s_i for 1 <= d <= dcap. The optimum of
    // max C^{d_i} s_i over admissible depth assignments is attained at one.
    std::vector<PowerValue> candidates;
    for (const auto& s : leaf_norms) {
        PowerValue cur = s;
        for (unsigned d = 1; d <= dcap; ++d) {
            cur = cur * c;
            candidates.push_back(cur);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const PowerValue& a, const PowerValue& b) {
                  return PowerValue::cmp(a, b) == Cmp::Less;
              });
    std::vector<unsigned> depths;
    for (const auto& v : candidates) {
        if (depth_allowance(leaf_norms, c, v, dcap, depths) && kraft_feasible(depths)) {
            return v;
        }
    }
    throw std::logic_error("best_tree_value: no feasible candidate");
}

TreeDecomposition best_tree_shape(const std::vector<PowerValue>& leaf_norms,
                                  const PowerValue& c) {
    TreeDecomposition t;
    t.leaves.resize(leaf_norms.size());
    for (std::size_t i = 0; i < leaf_norms.size(); ++i) t.leaves[i].component = i;
    if (leaf_norms.size() == 1) {
        t.nodes.push_back({-1, -1, 0});
        t.root = 0;
        return t;
    }
    const PowerValue v = best_tree_value(leaf_norms, c);
    const unsigned dcap = static_cast<unsigned>(leaf_norms.size() - 1);
    std::vector<unsigned> depths;
    depth_allowance(leaf_norms, c, v, dcap, depths);
    // Lift leaves until the Kraft sum is exactly 1 (each lift adds a dyadic
    // unit and never overshoots), then the multiset is realizable as a full
    // binary tree. Lifting only shrinks depths, so the value stays optimal.
    auto kraft = [&] {
        Rat sum = 0;
        for (unsigned d : depths) sum += Rat(Int(1), Int(1) << d);
        return sum;
    };
    while (kraft() < 1) {
        std::size_t deepest = 0;
        for (std::size_t i = 1; i < depths.size(); ++i)
            if (depths[i] > depths[deepest]) deepest = i;
        --depths[deepest];
    }
    // Recursive construction from the exact-Kraft depth multiset.
    struct Builder {
        TreeDecomposition& t;
        int build(std::vector<std::pair<unsigned, int>> items) {
            // items: (remaining depth, leaf index), Kraft sum == 1.
            if (items.size() == 1 && items[0].first == 0) {
                t.nodes.push_back({-1, -1, items[0].second});
                return static_cast<int>(t.nodes.size() - 1);
            }
            std::sort(items.begin(), items.end());
            std::vector<std::pair<unsigned, int>> left, right;
            Rat acc = 0;
            for (auto& [d, leaf] : items) {
                Rat w = Rat(Int(1), Int(1) << (d - 1));  // weight inside the half
                if (acc + w <= 1) {
                    acc += w;
                    left.emplace_back(d - 1, leaf);
                } else {
                    right.emplace_back(d - 1, leaf);
                }
            }
            int l = build(std::move(left));
            int r = build(std::move(right));
            t.nodes.push_back({l, r, -1});
            return static_cast<int>(t.nodes.size() - 1);
        }
    } builder{t};
    std::vector<std::pair<unsigned, int>> items;
    for (std::size_t i = 0; i < depths.size(); ++i)
        items.emplace_back(depths[i], static_cast<int>(i));
    t.root = builder.build(std::move(items));
    return t;
}

}  // namespace halo
