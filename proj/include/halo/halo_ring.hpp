#pragma once

#include "halo/certificate.hpp"
#include "halo/normed_set.hpp"
#include "halo/padic.hpp"
#include "halo/power_value.hpp"

#include <optional>
#include <string>
#include <vector>

namespace halo {

enum class RingId { Z, Q, Qp };       // Q is the rational model of the reals
enum class NormKind { Arch, Trivial, PAdic };
enum class Flavor { Short, Lipschitz };

/// A scalar context: ring, norm evaluator and flavor constants. The norm is
/// a base norm (archimedean, trivial or p-adic) raised to a rational power,
/// which is exactly the orbit of the concrete halos under the flow.
struct HaloDescriptor {
    RingId ring = RingId::Z;
    NormKind kind = NormKind::Arch;
    Rat power = 1;                      // norm = base_norm^power, power > 0
    std::optional<PAdicContext> padic;  // for NormKind::PAdic

    Flavor flavor = Flavor::Short;
    PExponent p = PExponent::of(1);     // short constant
    PowerValue lip_c = PowerValue::from_rat(2);  // Lipschitz constants
    PowerValue lip_d = PowerValue::one();

    PowerValue norm(const Rat& x) const;
    bool element_ok(const Rat& x) const;
    std::string ring_name() const;
    std::string norm_name() const;
};

HaloDescriptor make_short_halo(RingId ring, NormKind kind, const Rat& power,
                               const PExponent& p, std::optional<PAdicContext> padic = {});
HaloDescriptor make_lipschitz_halo(RingId ring, NormKind kind, const Rat& power,
                                   const PowerValue& c, const PowerValue& d,
                                   std::optional<PAdicContext> padic = {});

/// Lip functor: short (R, |.|, p) to Lipschitz (R, |.|, (2^{1/p}, 1)).
HaloDescriptor lip_functor(const HaloDescriptor& h);

/// sigma_t: norm^t with p -> p/t (short) or (C, D) -> (C^t, D^t) (Lipschitz).
HaloDescriptor flow_halo(const HaloDescriptor& h, const Rat& t);

/// ||(a, b)||_{p} in the halo's flavor: the l^p combination for short, and
/// C * max(a, b) for Lipschitz.
PowerValue pair_combination(const HaloDescriptor& h, const PowerValue& a,
                            const PowerValue& b);

/// Axiom check over a finite sample (must contain 0 and 1). Axiom 5
/// (completeness) is not decidable from samples; the report documents this
/// and only spot-checks closure of the samples under ring operations.
struct AxiomReport {
    bool passed = true;
    int failed_axiom = 0;  // 1..4, 0 if passed
    std::optional<std::pair<Rat, Rat>> witness;
    std::string detail;
    std::vector<std::string> notes;
};

AxiomReport check_halo_axioms(const HaloDescriptor& h, const std::vector<Rat>& samples);

/// Re-normalization of Lemma-style |f|_{H,p}: the infimum over finite
/// decompositions f = sum f_i of ||(|f_i|)||_p. Upper bound from the best
/// decomposition found (witness recorded), lower bound from the fact that k
/// nonzero parts of norm >= m force a value >= k^{1/p} m (short) resp.
/// C^{ceil(log2 k)} m (Lipschitz).
struct RenormCertificate : BoundsInfo {
    std::vector<Rat> witness_parts;
    int effective_max_parts = 0;
};

RenormCertificate renorm_infimum(const HaloDescriptor& h, const PExponent& p,
                                 const Rat& f, const SearchBudget& budget = {});

}  // namespace halo
