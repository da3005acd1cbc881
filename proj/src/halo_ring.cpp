#include "halo/halo_ring.hpp"

#include "halo/tree_norm.hpp"

#include <algorithm>
#include <sstream>

namespace halo {

PowerValue HaloDescriptor::norm(const Rat& x) const {
    switch (kind) {
        case NormKind::Arch:
            if (x == 0) return PowerValue::zero();
            return PowerValue::pow_of(abs(x), power);
        case NormKind::Trivial:
            return x == 0 ? PowerValue::zero() : PowerValue::one();
        case NormKind::PAdic:
            if (!padic) throw std::logic_error("HaloDescriptor: missing p-adic context");
            return padic_abs(x, *padic).pow(power);
    }
    throw std::logic_error("HaloDescriptor: bad norm kind");
}

bool HaloDescriptor::element_ok(const Rat& x) const {
    return ring != RingId::Z || is_integer(x);
}

std::string HaloDescriptor::ring_name() const {
    switch (ring) {
        case RingId::Z: return "Z";
        case RingId::Q: return "Q";
        case RingId::Qp: return "Q_" + padic->p.str();
    }
    return "?";
}

std::string HaloDescriptor::norm_name() const {
    std::string base;
    switch (kind) {
        case NormKind::Arch: base = "arch"; break;
        case NormKind::Trivial: base = "trivial"; break;
        case NormKind::PAdic: base = "padic(" + padic->p.str() + ")"; break;
    }
    if (power != 1) base += "^" + rat_str(power);
    return base;
}

HaloDescriptor make_short_halo(RingId ring, NormKind kind, const Rat& power,
                               const PExponent& p, std::optional<PAdicContext> padic) {
    if (power <= 0) throw std::invalid_argument("halo: norm power must be > 0");
    if (kind == NormKind::PAdic && !padic)
        throw std::invalid_argument("halo: p-adic norm needs a prime");
    HaloDescriptor h;
    h.ring = ring;
    h.kind = kind;
    h.power = power;
    h.padic = std::move(padic);
    h.flavor = Flavor::Short;
    h.p = p;
    return h;
}

HaloDescriptor make_lipschitz_halo(RingId ring, NormKind kind, const Rat& power,
                                   const PowerValue& c, const PowerValue& d,
                                   std::optional<PAdicContext> padic) {
    auto h = make_short_halo(ring, kind, power, PExponent::of(1), std::move(padic));
    h.flavor = Flavor::Lipschitz;
    h.lip_c = c;
    h.lip_d = d;
    return h;
}

HaloDescriptor lip_functor(const HaloDescriptor& h) {
    if (h.flavor != Flavor::Short) throw std::invalid_argument("lip_functor: input not short");
    HaloDescriptor out = h;
    out.flavor = Flavor::Lipschitz;
    // C = 2^{1/p}; the limit convention gives 2^0 = 1 for p = infinity.
    out.lip_c = h.p.infinite ? PowerValue::one()
                             : PowerValue::pow_of(Rat(2), Rat(1) / h.p.value);
    out.lip_d = PowerValue::one();
    return out;
}

HaloDescriptor flow_halo(const HaloDescriptor& h, const Rat& t) {
    if (t <= 0) throw std::invalid_argument("flow_halo: t must be > 0");
    HaloDescriptor out = h;
    out.power = h.power * t;
    if (h.flavor == Flavor::Short) {
        out.p = h.p.divided_by(t);
    } else {
        out.lip_c = h.lip_c.pow(t);
        out.lip_d = h.lip_d.pow(t);
    }
    return out;
}

PowerValue pair_combination(const HaloDescriptor& h, const PowerValue& a,
                            const PowerValue& b) {
    if (h.flavor == Flavor::Short) return lp_norm({a, b}, h.p);
    return h.lip_c * max_norm({a, b});
}

namespace {

std::string ineq_detail(const char* lhs_name, const PowerValue& lhs, const char* rhs_name,
                        const PowerValue& rhs) {
    std::ostringstream os;
    os << lhs_name << " = " << lhs.str() << " > " << rhs_name << " = " << rhs.str();
    return os.str();
}

}  // namespace

AxiomReport check_halo_axioms(const HaloDescriptor& h, const std::vector<Rat>& samples) {
    AxiomReport report;
    if (std::find(samples.begin(), samples.end(), Rat(0)) == samples.end() ||
        std::find(samples.begin(), samples.end(), Rat(1)) == samples.end()) {
        throw std::invalid_argument("check_halo_axioms: samples must contain 0 and 1");
    }
    for (const auto& s : samples) {
        if (!h.element_ok(s))
            throw std::invalid_argument("check_halo_axioms: sample not in the ring");
    }
    auto fail = [&](int axiom, const Rat& f, const Rat& g, std::string detail) {
        report.passed = false;
        report.failed_axiom = axiom;
        report.witness = std::make_pair(f, g);
        report.detail = std::move(detail);
    };

    // Axiom 1: |1| = 1.
    if (!h.norm(Rat(1)).known_equal(PowerValue::one())) {
        fail(1, Rat(1), Rat(1), "|1| = " + h.norm(Rat(1)).str() + " != 1");
        return report;
    }
    // Axiom 2: |f| = 0 iff f = 0.
    for (const auto& f : samples) {
        const bool zero_norm = h.norm(f).is_zero();
        if (zero_norm != (f == 0)) {
            fail(2, f, f, "|" + rat_str(f) + "| = " + h.norm(f).str());
            return report;
        }
    }
    // Axiom 3: |f - g| <= ||(|f|, |g|)||_{p} for all sample pairs.
    for (const auto& f : samples) {
        for (const auto& g : samples) {
            PowerValue lhs = h.norm(f - g);
            PowerValue rhs = pair_combination(h, h.norm(f), h.norm(g));
            Cmp c = PowerValue::cmp(lhs, rhs);
            if (c == Cmp::Greater) {
                fail(3, f, g,
                     "|" + rat_str(f) + " - " + rat_str(g) + "|: " +
                         ineq_detail("lhs", lhs, "bound", rhs));
                return report;
            }
            if (c == Cmp::Unknown) {
                fail(3, f, g, "comparison undecided at working precision");
                return report;
            }
        }
    }
    // Axiom 4: submultiplicativity.
    for (const auto& f : samples) {
        for (const auto& g : samples) {
            PowerValue lhs = h.norm(f * g);
            PowerValue rhs = h.norm(f) * h.norm(g);
            if (h.flavor == Flavor::Lipschitz) rhs = h.lip_d * rhs;
            Cmp c = PowerValue::cmp(lhs, rhs);
            if (c == Cmp::Greater || c == Cmp::Unknown) {
                fail(4, f, g,
                     "|" + rat_str(f) + " * " + rat_str(g) + "|: " +
                         ineq_detail("lhs", lhs, "bound", rhs));
                return report;
            }
        }
    }
    report.notes.push_back(
        "axiom 5 (completeness) is not decidable from finite samples; sums and "
        "products of samples were spot-checked to have finite norms only");
    return report;
}

namespace {

struct RenormSearch {
    const HaloDescriptor& h;
    const PExponent& p;  // meaningful for short flavor
    std::vector<Rat> candidates = {};
    std::vector<PowerValue> candidate_norms = {};
    PowerValue min_candidate_norm = {};
    long nodes = 0;
    long node_cap = 0;

    PowerValue best_value = {};
    std::vector<Rat> best_parts = {};

    // Value of a finished part multiset.
    PowerValue value_of(const std::vector<PowerValue>& norms) const {
        if (h.flavor == Flavor::Short) return lp_norm(norms, p);
        return best_tree_value(norms, h.lip_c);
    }

    // Least possible value of any decomposition with exactly k nonzero parts.
    PowerValue floor_for(std::size_t k) const {
        if (h.flavor == Flavor::Short) {
            if (p.infinite) return min_candidate_norm;
            return PowerValue::pow_of(Rat(static_cast<long>(k)), Rat(1) / p.value) *
                   min_candidate_norm;
        }
        return tree_floor_value(k, min_candidate_norm, h.lip_c);
    }

    void consider(const std::vector<PowerValue>& norms, const std::vector<Rat>& parts) {
        PowerValue v = value_of(norms);
        if (PowerValue::cmp(v, best_value) == Cmp::Less) {
            best_value = v;
            best_parts = parts;
        }
    }

    // Enumerate multisets of candidates (indices nondecreasing) summing to
    // `remaining`, up to `slots` more parts.
    void dfs(const Rat& remaining, std::size_t start, int slots,
             std::vector<PowerValue>& norms, std::vector<Rat>& parts) {
        if (++nodes > node_cap) return;
        if (remaining == 0 && !parts.empty()) consider(norms, parts);
        if (slots == 0) return;
        // Prune: even with one more minimal part the floor exceeds the best.
        if (!parts.empty()) {
            PowerValue floor = floor_for(parts.size() + 1);
            if (PowerValue::cmp(floor, best_value) == Cmp::Greater) return;
        }
        for (std::size_t i = start; i < candidates.size(); ++i) {
            norms.push_back(candidate_norms[i]);
            parts.push_back(candidates[i]);
            dfs(remaining - candidates[i], i, slots - 1, norms, parts);
            norms.pop_back();
            parts.pop_back();
        }
    }
};

}  // namespace

RenormCertificate renorm_infimum(const HaloDescriptor& h, const PExponent& p, const Rat& f,
                                 const SearchBudget& budget) {
    if (!h.element_ok(f)) throw std::invalid_argument("renorm_infimum: f not in the ring");
    if (h.flavor == Flavor::Short && !p.infinite && !h.p.infinite && h.p.value > p.value) {
        // p must enlarge the halo's constant; smaller p is a usage error.
        throw std::invalid_argument("renorm_infimum: p must be >= p_R");
    }
    RenormCertificate cert;
    if (f == 0) {
        cert.lower = cert.upper = PowerValue::zero();
        return cert;
    }

    RenormSearch search{h, p};
    search.node_cap = budget.max_nodes;
    if (budget.candidates) {
        search.candidates = *budget.candidates;
    } else {
        // Discrete contexts over Z with archimedean-type norms: parts of
        // magnitude <= |f| suffice, since any larger part already outweighs
        // the trivial decomposition.
        if (h.ring != RingId::Z || h.kind == NormKind::PAdic) {
            throw std::invalid_argument(
                "renorm_infimum: context needs an explicit candidate set in the budget");
        }
        Int mag = boost::multiprecision::abs(numerator(f));
        for (Int v = 1; v <= mag; ++v) {
            search.candidates.push_back(Rat(v));
            search.candidates.push_back(Rat(-v));
        }
    }
    std::erase_if(search.candidates, [](const Rat& r) { return r == 0; });
    if (search.candidates.empty())
        throw std::invalid_argument("renorm_infimum: empty candidate set");
    for (const auto& cand : search.candidates)
        search.candidate_norms.push_back(h.norm(cand));
    search.min_candidate_norm = search.candidate_norms[0];
    for (const auto& n : search.candidate_norms) {
        if (PowerValue::cmp(n, search.min_candidate_norm) == Cmp::Less)
            search.min_candidate_norm = n;
    }

    int max_parts = budget.max_parts;
    if (max_parts <= 0) {
        Int mag = boost::multiprecision::abs(numerator(f)) / denominator(f);
        max_parts = 2 * static_cast<int>(std::max<Int>(mag, 1));
    }
    cert.effective_max_parts = max_parts;

    // Trivial decomposition as the initial upper bound.
    search.best_value = h.norm(f);
    search.best_parts = {f};

    std::vector<PowerValue> norms;
    std::vector<Rat> parts;
    search.dfs(f, 0, max_parts, norms, parts);

    cert.upper = search.best_value;
    cert.witness_parts = search.best_parts;

    // Certified lower bound: decompositions with more than max_parts parts
    // are worth at least floor_for(max_parts + 1); if that already reaches
    // the upper bound the search was exhaustive.
    PowerValue tail_floor = search.floor_for(static_cast<std::size_t>(max_parts) + 1);
    bool tail_covered = cmp_is_geq(PowerValue::cmp(tail_floor, cert.upper));
    bool node_overflow = search.nodes > search.node_cap;
    if (tail_covered && !node_overflow) {
        cert.lower = cert.upper;
        cert.gap = false;
    } else {
        cert.lower = PowerValue::cmp(tail_floor, cert.upper) == Cmp::Less ? tail_floor
                                                                          : cert.upper;
        cert.gap = true;
    }
    return cert;
}

}  // namespace halo
