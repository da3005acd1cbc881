#pragma once

#include "halo/lattice.hpp"
#include "halo/matrix.hpp"
#include "halo/padic.hpp"

#include <map>
#include <string>
#include <vector>

namespace halo {

/// Element of End(V) x End(V^vee): U acts on V, W acts on V^vee in the dual
/// basis. Group elements satisfy U W^T = W^T U = I.
struct MatrixPair {
    RatMatrix u, w;
};

/// (U, W) -> (W^T, U^T); applying twice is the identity.
MatrixPair involution(const MatrixPair& pair);

/// max(||U||, ||W||) in the chosen operator-norm space.
PowerValue pair_norm(const MatrixPair& pair, const OpNormSpace& space,
                     unsigned prec_bits = 64);

struct DualBasisElement {
    std::size_t i = 1, j = 1;  // 1-based
    int b = 0;
};

/// Norm of the dual-basis functional e_{i,j,b}: exactly 1, with the upper
/// bound computed from the entry-extraction inequality (unit basis vector
/// times unit dual functional) and the lower bound from evaluation at the
/// matching matrix unit.
PowerValue dual_basis_norm(const DualBasisElement& e, std::size_t n);

struct MembershipCertificate {
    bool member = false;
    struct Check {
        std::string condition;
        bool ok = false;
        std::string evidence;
    };
    std::vector<Check> checks;
};

/// Real points: member iff U^T U = I exactly (equivalently ||U|| and
/// ||U^{-1}|| are both <= 1). `flow_t` rescales the base norm by sigma_t;
/// verdicts are invariant because every comparison is against 1.
MembershipCertificate siso_membership_real(const RatMatrix& u, const Rat& flow_t = 1);

/// p-adic points: member iff all entry valuations are >= 0 and
/// v_p(det U) = 0, i.e. U in GL_n(Z_p).
MembershipCertificate siso_membership_padic(const RatMatrix& u, const PAdicContext& ctx,
                                            const Rat& flow_t = 1);

/// Integer points: member iff U is integral, det U in {+1, -1} and
/// U^T U = I (signed permutation matrices).
MembershipCertificate siso_membership_int(const RatMatrix& u, const Rat& flow_t = 1);

/// All integer U with U^T U = I for n <= 4, lexicographically ordered on
/// the flattened entry list.
std::vector<RatMatrix> enumerate_Kn_Z(std::size_t n);

/// Nondegenerate integer bilinear form.
struct BilinearForm {
    RatMatrix phi;
    explicit BilinearForm(RatMatrix m);
};

enum class PointContext { Real, PAdic, Int };

/// Membership in the short isometry group of a bilinear form: the algebraic
/// condition U^T Phi U = Phi plus the ambient norm condition on the
/// embedded pair (U, [sigma_phi(U)]^T).
MembershipCertificate siso_phi_membership(const RatMatrix& u, const BilinearForm& phi,
                                          PointContext context,
                                          std::optional<PAdicContext> prime = {},
                                          const Rat& flow_t = 1);

/// Integer polynomial in the coordinate variables x_{i,j,b} (1-based i, j).
struct RelationPoly {
    struct Var {
        std::size_t i = 1, j = 1;
        int b = 0;
        auto operator<=>(const Var&) const = default;
    };
    using Monomial = std::vector<Var>;  // sorted, with multiplicity
    std::map<Monomial, Int> terms;

    bool operator==(const RelationPoly&) const = default;
    std::string str() const;
    Rat evaluate(const MatrixPair& at) const;
};

/// The 2n^2 defining relations sum_k x_{i,k,0} x_{j,k,1} - delta_{ij} and
/// sum_k x_{k,i,1} x_{k,j,0} - delta_{ij}; they vanish on (U, W) exactly
/// when U W^T = W^T U = I. Duplicates are removed (the two families
/// coincide for n = 1).
std::vector<RelationPoly> generate_relations(std::size_t n);

/// The scaled endomorphism pair iota(f, s) = (s F0, s F1) used by the
/// boundedness inequality |iota(f,s)| <= n^{1+1/q} |f| |s|.
MatrixPair iota_pair(const MatrixPair& functional, const Rat& scalar);

}  // namespace halo
