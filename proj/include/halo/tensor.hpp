#pragma once

#include "halo/certificate.hpp"
#include "halo/lattice.hpp"

#include <utility>
#include <vector>

namespace halo {

/// One presentation target = sum_k f_k (x) s_k with integer vectors f_k and
/// scalars s_k from the extension context.
struct Presentation {
    std::vector<std::pair<std::vector<Rat>, Rat>> terms;
};

struct PresentationCertificate : BoundsInfo {
    Presentation witness;
};

/// Scalar-extension norm of `target` in base (x) S via the presentation
/// infimum. S must be the real-rational context (Lipschitz combination
/// constant 2, i.e. the l1 combination over presentations) or a p-adic
/// context (constant 1, i.e. the max combination). The lower bound comes
/// from evaluation against coordinate functionals; over Q_p on unit-basis
/// lattices the two provably meet.
PresentationCertificate presentation_norm(const std::vector<Rat>& target,
                                          const NormedLattice& base,
                                          const HaloDescriptor& s,
                                          const SearchBudget& budget = {});

struct QuotientCertificate : BoundsInfo {
    std::vector<Rat> witness_preimage;
    std::size_t kernel_rank = 0;
};

/// Quotient norm inf{ |c0 + k| : k in ker(projection) } for a surjective
/// integer projection; the kernel lattice is enumerated inside a certified
/// coefficient box derived from the upper bound.
QuotientCertificate quotient_norm(const std::vector<Rat>& c, const RatMatrix& projection,
                                  const NormedLattice& fiber,
                                  const SearchBudget& budget = {});

}  // namespace halo
