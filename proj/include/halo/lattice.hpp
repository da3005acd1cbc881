#pragma once

#include "halo/certificate.hpp"
#include "halo/halo_ring.hpp"
#include "halo/matrix.hpp"
#include "halo/normed_set.hpp"
#include "halo/tree_norm.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace halo {

/// Finite-rank free Z-module with a per-element norm evaluator and flavor
/// constants. `min_nonzero_norm` bounds the norm of nonzero integer points
/// from below (zero when no positive bound exists, e.g. p-adic norms).
/// `box_for_norm(b)` returns a coordinate magnitude B such that every
/// integer point with norm <= b has all |coords| <= B (nullopt when no such
/// box exists), and `coord_norm_floor(r)` gives a norm lower bound for any
/// point with some |coord| >= r; together they make box searches certified.
struct NormedLattice {
    std::size_t rank = 1;
    HaloDescriptor base;
    Flavor flavor = Flavor::Short;
    PExponent p_m = PExponent::of(1);
    PowerValue c_m = PowerValue::from_rat(2), d_m = PowerValue::one();

    std::function<PowerValue(const std::vector<Rat>&)> norm_fn;
    PowerValue min_nonzero_norm = PowerValue::one();
    std::function<std::optional<Int>(const PowerValue&)> box_for_norm;
    std::function<PowerValue(const Rat&)> coord_norm_floor;
    std::string descr;

    PowerValue norm(const std::vector<Rat>& v) const;
    bool box_searchable() const { return static_cast<bool>(box_for_norm); }
};

/// Z^rank (or Q^rank) with the l^q combination of the base halo norm.
NormedLattice make_lq_lattice(std::size_t rank, const PExponent& q,
                              const HaloDescriptor& base);

/// The lattice of integer endomorphism pairs of rank 2n^2, normed by the
/// pair operator norm max(||U||, ||W||) in the real l^2 spaces. Element
/// layout: U row-major, then W row-major.
NormedLattice make_pair_op_lattice(std::size_t n);

/// ||m||_{I,p} = (sum_i |m_i|^p)^{1/p} over the listed summands.
PowerValue direct_sum_short_norm(
    const std::vector<std::pair<const NormedLattice*, std::vector<Rat>>>& parts,
    const PExponent& p, unsigned prec_bits = 64);

/// Weighted free-module norm ||sum a_x {x}||_{X,p} = ||(|a_x| * |x|)||_p.
PowerValue free_module_norm(const std::vector<std::pair<Rat, PowerValue>>& coeffs,
                            const PExponent& p, const HaloDescriptor& base);

/// Operator-norm space selector: real-rational or p-adic scalars with
/// q in {1, 2, inf} (p-adic supports q = inf only).
struct OpNormSpace {
    bool padic = false;
    PExponent q = PExponent::of(2);
    std::optional<PAdicContext> prime;

    static OpNormSpace real(const PExponent& q) { return {false, q, {}}; }
    static OpNormSpace p_adic(PAdicContext ctx) {
        return {true, PExponent::inf(), std::move(ctx)};
    }
};

/// Exact for q in {1, inf} (max column/row l1 sums) and for the p-adic max
/// entry norm; l2 returns an exact power value when lambda_max is rational
/// and a certified interval otherwise.
PowerValue operator_norm(const RatMatrix& a, const OpNormSpace& space,
                         unsigned prec_bits = 64);

/// Lipschitz direct-sum norm: the infimum over finite binary trees whose
/// leaves decompose each summand. Bounds meet when the leaf-count floor
/// C^{ceil(log2 k)} * min_norm certifies exhaustiveness within the budget.
struct TreeNormCertificate : BoundsInfo {
    TreeDecomposition witness;
    std::vector<PowerValue> witness_leaf_norms;
    int effective_max_leaves = 0;
};

TreeNormCertificate tree_norm(
    const std::vector<std::pair<const NormedLattice*, std::vector<Rat>>>& parts,
    const PowerValue& c, const SearchBudget& budget = {});

/// Operator-norm bound C_N^{n-1} * D_N * C_f * C of the boundedness
/// criterion, with C_f = max image norm.
PowerValue boundedness_bound(const std::vector<PowerValue>& basis_norms,
                             const PowerValue& dual_constant, const PowerValue& c_n,
                             const PowerValue& d_n,
                             const std::vector<PowerValue>& image_norms);

/// Spot-check of the criterion's hypothesis ||(s_j)||_{S,inf} <= C |sum s_j e_j|_M
/// on sampled coefficient tuples; returns false with the first failing tuple.
bool check_boundedness_hypothesis(
    const NormedLattice& m, const std::vector<std::vector<Rat>>& basis,
    const PowerValue& dual_constant, const HaloDescriptor& scalar_halo,
    const std::vector<std::vector<Rat>>& coefficient_samples,
    std::vector<Rat>* failing_tuple = nullptr);

}  // namespace halo
