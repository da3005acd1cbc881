#include "halo/lattice.hpp"

#include "halo/spectral.hpp"

#include <algorithm>
#include <map>

namespace halo {

PowerValue NormedLattice::norm(const std::vector<Rat>& v) const {
    if (v.size() != rank) throw std::invalid_argument("NormedLattice: wrong dimension");
    return norm_fn(v);
}

NormedLattice make_lq_lattice(std::size_t rank, const PExponent& q,
                              const HaloDescriptor& base) {
    NormedLattice lat;
    lat.rank = rank;
    lat.base = base;
    lat.flavor = base.flavor;
    // An l^q combination of p_R-subadditive coordinates is min(q, p_R)-
    // subadditive.
    lat.p_m = base.flavor == Flavor::Short ? (q.leq(base.p) ? q : base.p)
                                           : PExponent::of(1);
    lat.c_m = base.lip_c;
    lat.d_m = base.lip_d;
    lat.norm_fn = [rank, q, base](const std::vector<Rat>& v) {
        std::vector<PowerValue> entries;
        entries.reserve(rank);
        for (const auto& x : v) entries.push_back(base.norm(x));
        return lp_norm(entries, q);
    };
    if (base.kind == NormKind::Arch) {
        lat.min_nonzero_norm = PowerValue::one();
        // Entrywise: norm >= |v_i|_inf^power, so norm <= b boxes the
        // coordinates at b^{1/power}.
        const Rat t = base.power;
        lat.box_for_norm = [t](const PowerValue& b) -> std::optional<Int> {
            auto e = b.pow(Rat(1) / t).enclosure();
            return numerator(e.second) / denominator(e.second) + 1;
        };
        lat.coord_norm_floor = [t](const Rat& r) {
            return r <= 0 ? PowerValue::zero() : PowerValue::pow_of(r, t);
        };
    } else if (base.kind == NormKind::Trivial) {
        lat.min_nonzero_norm = PowerValue::one();  // but no coordinate box
    } else {
        lat.min_nonzero_norm = PowerValue::zero();  // p-adic: no positive floor on Z^n
    }
    lat.descr = base.ring_name() + "^" + std::to_string(rank) + " l^" + q.str() + " " +
                base.norm_name();
    return lat;
}

NormedLattice make_pair_op_lattice(std::size_t n) {
    NormedLattice lat;
    lat.rank = 2 * n * n;
    lat.base = make_short_halo(RingId::Z, NormKind::Arch, 1, PExponent::of(1));
    lat.flavor = Flavor::Lipschitz;
    lat.c_m = PowerValue::from_rat(2);
    lat.d_m = PowerValue::one();
    lat.norm_fn = [n](const std::vector<Rat>& v) {
        RatMatrix u(n, n), w(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                u.at(i, j) = v[i * n + j];
                w.at(i, j) = v[n * n + i * n + j];
            }
        return max_norm({l2_operator_norm(u), l2_operator_norm(w)});
    };
    // A nonzero integer pair has some entry of magnitude >= 1 and the l2
    // operator norm dominates the max entry.
    lat.min_nonzero_norm = PowerValue::one();
    lat.box_for_norm = [](const PowerValue& b) -> std::optional<Int> {
        auto e = b.enclosure();
        return numerator(e.second) / denominator(e.second) + 1;
    };
    lat.coord_norm_floor = [](const Rat& r) {
        return r <= 0 ? PowerValue::zero() : PowerValue::from_rat(r);
    };
    lat.descr = "End pair lattice n=" + std::to_string(n) + " (l2 operator norm)";
    return lat;
}

PowerValue direct_sum_short_norm(
    const std::vector<std::pair<const NormedLattice*, std::vector<Rat>>>& parts,
    const PExponent& p, unsigned prec_bits) {
    std::vector<PowerValue> norms;
    norms.reserve(parts.size());
    for (const auto& [lat, elem] : parts) {
        if (lat->flavor == Flavor::Short && !lat->p_m.leq(p)) {
            throw std::invalid_argument("direct_sum_short_norm: p must dominate every p_M");
        }
        norms.push_back(lat->norm(elem));
    }
    return lp_norm(norms, p, prec_bits);
}

PowerValue free_module_norm(const std::vector<std::pair<Rat, PowerValue>>& coeffs,
                            const PExponent& p, const HaloDescriptor& base) {
    std::vector<PowerValue> terms;
    terms.reserve(coeffs.size());
    for (const auto& [a, weight] : coeffs) terms.push_back(base.norm(a) * weight);
    return lp_norm(terms, p);
}

PowerValue operator_norm(const RatMatrix& a, const OpNormSpace& space, unsigned prec_bits) {
    if (space.padic) {
        if (!space.q.infinite)
            throw std::invalid_argument("operator_norm: p-adic supports q = inf only");
        PowerValue best = PowerValue::zero();
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                PowerValue v = padic_abs(a.at(i, j), *space.prime);
                if (PowerValue::cmp(v, best) == Cmp::Greater) best = v;
            }
        return best;
    }
    if (space.q.infinite) {
        // max row l1 sum
        Rat best = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < a.cols(); ++j) s += abs(a.at(i, j));
            best = std::max(best, s);
        }
        return PowerValue::from_rat(best);
    }
    if (space.q.value == 1) {
        // max column l1 sum
        Rat best = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Rat s = 0;
            for (std::size_t i = 0; i < a.rows(); ++i) s += abs(a.at(i, j));
            best = std::max(best, s);
        }
        return PowerValue::from_rat(best);
    }
    if (space.q.value == 2) return l2_operator_norm(a, prec_bits);
    throw std::invalid_argument("operator_norm: q must be 1, 2 or inf");
}

namespace {

// All multisets of nonzero candidate points summing to `target`, with at
// most `max_parts` parts; parts are chosen with nondecreasing candidate
// index, so each multiset appears once.
struct ComponentDecompositions {
    std::vector<std::vector<Rat>> candidates;          // points
    std::vector<PowerValue> candidate_norms;
    std::vector<std::vector<std::size_t>> multisets;   // index lists
};

void enumerate_points(const NormedLattice& lat, const Int& box, std::vector<Rat>& cur,
                      std::vector<std::vector<Rat>>& out) {
    if (cur.size() == lat.rank) {
        if (std::any_of(cur.begin(), cur.end(), [](const Rat& r) { return r != 0; }))
            out.push_back(cur);
        return;
    }
    for (Int v = -box; v <= box; ++v) {
        cur.push_back(Rat(v));
        enumerate_points(lat, box, cur, out);
        cur.pop_back();
    }
}

// Shared context for the per-component multiset enumeration. Candidates are
// sorted by nonincreasing norm, so the j-th chosen part is the j-th largest
// leaf of its component; in any tree over the pooled leaves the j-th largest
// of a component has global rank >= j, hence depth >= ceil(log2 j), which
// gives the pruning bound C^{ceil(log2 j)} * norm <= upper.
struct MultisetEnum {
    const std::vector<std::vector<Rat>>& candidates;
    const std::vector<PowerValue>& norms;           // nonincreasing
    const std::vector<PowerValue>& rank_penalties;  // C^{ceil(log2 j)}, 1-based
    const PowerValue& upper;
    std::vector<Rat> coord_caps;
    long& nodes;
    long node_cap;
    std::vector<std::vector<std::size_t>>& out;
    std::vector<std::size_t> cur;

    void run(std::vector<Rat>& remaining, std::size_t start, int slots) {
        if (++nodes > node_cap) return;
        if (std::all_of(remaining.begin(), remaining.end(),
                        [](const Rat& r) { return r == 0; }) &&
            !cur.empty()) {
            out.push_back(cur);
        }
        if (slots == 0) return;
        for (std::size_t d = 0; d < remaining.size(); ++d) {
            if (abs(remaining[d]) > Rat(slots) * coord_caps[d]) return;
        }
        const std::size_t position = cur.size() + 1;  // rank of the next part
        const PowerValue& penalty = rank_penalties[std::min(
            position, rank_penalties.size() - 1)];
        for (std::size_t i = start; i < candidates.size(); ++i) {
            if (position > 1 &&
                PowerValue::cmp(penalty * norms[i], upper) == Cmp::Greater)
                continue;
            for (std::size_t d = 0; d < remaining.size(); ++d)
                remaining[d] -= candidates[i][d];
            cur.push_back(i);
            run(remaining, i, slots - 1);
            cur.pop_back();
            for (std::size_t d = 0; d < remaining.size(); ++d)
                remaining[d] += candidates[i][d];
        }
    }
};

}  // namespace

TreeNormCertificate tree_norm(
    const std::vector<std::pair<const NormedLattice*, std::vector<Rat>>>& parts,
    const PowerValue& c, const SearchBudget& budget) {
    if (parts.empty()) throw std::invalid_argument("tree_norm: no summands");
    if (PowerValue::cmp(c, PowerValue::one()) == Cmp::Less)
        throw std::invalid_argument("tree_norm: C must be >= 1");
    TreeNormCertificate cert;
    cert.effective_max_leaves = budget.max_leaves;

    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& [lat, elem] = parts[i];
        if (elem.size() != lat->rank)
            throw std::invalid_argument("tree_norm: element dimension mismatch");
        if (std::any_of(elem.begin(), elem.end(), [](const Rat& r) { return r != 0; }))
            nonzero.push_back(i);
    }
    if (nonzero.empty()) {
        cert.lower = cert.upper = PowerValue::zero();
        return cert;
    }

    // Minimum nonzero leaf norm across the involved lattices.
    const bool explicit_candidates = budget.candidates.has_value();
    PowerValue m0 = parts[nonzero[0]].first->min_nonzero_norm;
    for (std::size_t i : nonzero) {
        const auto& lat = *parts[i].first;
        if (!explicit_candidates &&
            (lat.min_nonzero_norm.is_zero() || !lat.box_searchable())) {
            throw std::invalid_argument(
                "tree_norm: lattice lacks a positive norm floor; supply candidates");
        }
        if (explicit_candidates && lat.rank != 1) {
            throw std::invalid_argument(
                "tree_norm: explicit candidates are supported for rank-1 summands only");
        }
        if (PowerValue::cmp(lat.min_nonzero_norm, m0) == Cmp::Less)
            m0 = lat.min_nonzero_norm;
    }

    // Trivial upper bound: one leaf per nonzero component, balanced tree.
    std::vector<PowerValue> trivial_norms;
    for (std::size_t i : nonzero) trivial_norms.push_back(parts[i].first->norm(parts[i].second));
    PowerValue upper = best_tree_value(trivial_norms, c);

    std::vector<ComponentDecompositions> decomps(nonzero.size());
    long nodes = 0;
    for (std::size_t ci = 0; ci < nonzero.size(); ++ci) {
        const auto& [lat, elem] = parts[nonzero[ci]];
        auto& dec = decomps[ci];
        if (explicit_candidates) {
            for (const auto& cand : *budget.candidates) {
                if (cand != 0) dec.candidates.push_back({cand});
            }
            // With an explicit set, the floor comes from the set itself.
            for (const auto& cand : dec.candidates) {
                PowerValue n = lat->norm(cand);
                if (m0.is_zero() || PowerValue::cmp(n, m0) == Cmp::Less) m0 = n;
            }
        } else {
            std::vector<Rat> cur;
            enumerate_points(*lat, *lat->box_for_norm(upper), cur, dec.candidates);
        }
        // Drop candidates whose norm already exceeds the trivial bound and
        // sort the rest by nonincreasing norm.
        std::vector<std::pair<std::vector<Rat>, PowerValue>> kept;
        for (auto& cand : dec.candidates) {
            PowerValue n = lat->norm(cand);
            if (cmp_is_leq(PowerValue::cmp(n, upper))) kept.emplace_back(cand, n);
        }
        std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
            return PowerValue::cmp(a.second, b.second) == Cmp::Greater;
        });
        dec.candidates.clear();
        dec.candidate_norms.clear();
        for (auto& [cand, n] : kept) {
            dec.candidates.push_back(std::move(cand));
            dec.candidate_norms.push_back(n);
        }
        std::vector<Rat> coord_caps(lat->rank, Rat(0));
        for (const auto& cand : dec.candidates)
            for (std::size_t d = 0; d < lat->rank; ++d)
                coord_caps[d] = std::max(coord_caps[d], abs(cand[d]));
        // Other nonzero components claim at least one leaf each. Even when
        // the budget is below the component count, one leaf per component
        // keeps a valid (if over-budget) upper-bound witness.
        int slots = std::max(1, budget.max_leaves - static_cast<int>(nonzero.size()) + 1);
        std::vector<PowerValue> penalties;
        for (int j = 0; j <= slots; ++j) {
            PowerValue p = PowerValue::one();
            for (unsigned d = 0; d < ceil_log2(static_cast<std::size_t>(std::max(j, 1)));
                 ++d)
                p = p * c;
            penalties.push_back(p);
        }
        std::vector<Rat> remaining = elem;
        MultisetEnum me{dec.candidates, dec.candidate_norms, penalties,
                        upper,          std::move(coord_caps), nodes,
                        budget.max_nodes, dec.multisets,       {}};
        me.run(remaining, 0, slots);
        if (dec.multisets.empty())
            throw std::logic_error("tree_norm: component admits no decomposition");
    }

    // Combine one multiset per component; the value depends only on the
    // pooled leaf-norm multiset.
    std::vector<std::size_t> choice(nonzero.size(), 0);
    std::vector<PowerValue> best_norms;
    std::vector<TreeDecomposition::Leaf> best_leaves;
    std::function<void(std::size_t, std::size_t)> combine = [&](std::size_t ci,
                                                                std::size_t used) {
        if (++nodes > budget.max_nodes) return;
        if (ci == nonzero.size()) {
            std::vector<PowerValue> pool;
            std::vector<TreeDecomposition::Leaf> leaves;
            for (std::size_t k = 0; k < nonzero.size(); ++k) {
                const auto& dec = decomps[k];
                for (std::size_t idx : dec.multisets[choice[k]]) {
                    pool.push_back(dec.candidate_norms[idx]);
                    leaves.push_back({nonzero[k], dec.candidates[idx]});
                }
            }
            // Cheap certified lower bound: the j-th largest leaf sits at
            // depth >= ceil(log2 j), so the value is at least
            // max_j C^{ceil(log2 j)} s_j. Pools that cannot strictly improve
            // on the incumbent are skipped.
            std::vector<PowerValue> sorted = pool;
            std::sort(sorted.begin(), sorted.end(),
                      [](const PowerValue& a, const PowerValue& b) {
                          return PowerValue::cmp(a, b) == Cmp::Greater;
                      });
            PowerValue floor = PowerValue::zero();
            PowerValue cpow = PowerValue::one();
            std::size_t next_jump = 1;
            for (std::size_t j = 1; j <= sorted.size(); ++j) {
                if (j > next_jump) {
                    cpow = cpow * c;
                    next_jump *= 2;
                    while (j > next_jump) {
                        cpow = cpow * c;
                        next_jump *= 2;
                    }
                }
                PowerValue bound = cpow * sorted[j - 1];
                if (PowerValue::cmp(bound, floor) == Cmp::Greater) floor = bound;
            }
            if (PowerValue::cmp(floor, upper) != Cmp::Less) return;
            PowerValue v = best_tree_value(pool, c);
            if (PowerValue::cmp(v, upper) == Cmp::Less) {
                upper = v;
                best_norms = pool;
                best_leaves = leaves;
            }
            return;
        }
        const auto& dec = decomps[ci];
        for (std::size_t m = 0; m < dec.multisets.size(); ++m) {
            std::size_t sz = dec.multisets[m].size();
            if (used + sz > static_cast<std::size_t>(budget.max_leaves)) continue;
            // Remaining components need at least one leaf each.
            if (used + sz + (nonzero.size() - ci - 1) >
                static_cast<std::size_t>(budget.max_leaves))
                continue;
            choice[ci] = m;
            combine(ci + 1, used + sz);
        }
    };
    if (best_norms.empty()) {
        best_norms = trivial_norms;
        for (std::size_t i : nonzero) best_leaves.push_back({i, parts[i].second});
    }
    combine(0, 0);

    cert.upper = upper;
    TreeDecomposition shape = best_tree_shape(best_norms, c);
    // best_tree_shape tags leaves with input indices; attach the payloads.
    for (auto& leaf : shape.leaves) {
        std::size_t input = leaf.component;
        leaf = best_leaves[input];
    }
    cert.witness = shape;
    cert.witness_leaf_norms = best_norms;

    PowerValue tail_floor =
        tree_floor_value(static_cast<std::size_t>(budget.max_leaves) + 1, m0, c);
    bool tail_covered = cmp_is_geq(PowerValue::cmp(tail_floor, cert.upper));
    bool overflow = nodes > budget.max_nodes;
    if (tail_covered && !overflow) {
        cert.lower = cert.upper;
        cert.gap = false;
    } else {
        cert.lower = PowerValue::cmp(tail_floor, cert.upper) == Cmp::Less ? tail_floor
                                                                          : cert.upper;
        cert.gap = true;
    }
    return cert;
}

PowerValue boundedness_bound(const std::vector<PowerValue>& basis_norms,
                             const PowerValue& dual_constant, const PowerValue& c_n,
                             const PowerValue& d_n,
                             const std::vector<PowerValue>& image_norms) {
    if (basis_norms.empty()) throw std::invalid_argument("boundedness_bound: empty basis");
    const std::size_t n = basis_norms.size();
    PowerValue c_f = max_norm(image_norms);
    PowerValue bound = PowerValue::one();
    for (std::size_t i = 0; i + 1 < n; ++i) bound = bound * c_n;
    return bound * d_n * c_f * dual_constant;
}

bool check_boundedness_hypothesis(
    const NormedLattice& m, const std::vector<std::vector<Rat>>& basis,
    const PowerValue& dual_constant, const HaloDescriptor& scalar_halo,
    const std::vector<std::vector<Rat>>& coefficient_samples,
    std::vector<Rat>* failing_tuple) {
    for (const auto& tuple : coefficient_samples) {
        if (tuple.size() != basis.size())
            throw std::invalid_argument("check_boundedness_hypothesis: tuple size mismatch");
        std::vector<PowerValue> coeff_norms;
        std::vector<Rat> combo(m.rank, Rat(0));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            coeff_norms.push_back(scalar_halo.norm(tuple[j]));
            for (std::size_t d = 0; d < m.rank; ++d) combo[d] += tuple[j] * basis[j][d];
        }
        PowerValue lhs = max_norm(coeff_norms);
        PowerValue rhs = dual_constant * m.norm(combo);
        if (!cmp_is_leq(PowerValue::cmp(lhs, rhs))) {
            if (failing_tuple) *failing_tuple = tuple;
            return false;
        }
    }
    return true;
}

}  // namespace halo
