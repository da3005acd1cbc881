#include "halo/tensor.hpp"

#include <algorithm>

namespace halo {

namespace {

// Lipschitz tuple combination over the divisible scalar halo: constant 1
// (ultrametric contexts) gives the max, constant 2 (real-archimedean) gives
// the l1 sum; these are the two closed forms of the binary-tree infimum over
// real masses.
PowerValue tuple_combination(const std::vector<PowerValue>& values, const PowerValue& c) {
    if (c.known_equal(PowerValue::one())) return max_norm(values);
    if (c.known_equal(PowerValue::from_rat(Rat(2)))) {
        PowerValue sum = PowerValue::zero();
        for (const auto& v : values) sum = sum.add(v);
        return sum;
    }
    throw std::invalid_argument("presentation_norm: context constant must be 1 or 2");
}

PowerValue presentation_value(const Presentation& pres, const NormedLattice& base,
                              const HaloDescriptor& s, const PowerValue& c) {
    std::vector<PowerValue> vals;
    vals.reserve(pres.terms.size());
    for (const auto& [f, scalar] : pres.terms) vals.push_back(base.norm(f) * s.norm(scalar));
    return tuple_combination(vals, c);
}

// Dual norm of the i-th coordinate functional on an l^q arch lattice with
// unit basis norms: exactly 1. We verify the unit-basis condition instead of
// assuming it.
void require_unit_basis(const NormedLattice& base) {
    for (std::size_t i = 0; i < base.rank; ++i) {
        std::vector<Rat> e(base.rank, Rat(0));
        e[i] = 1;
        if (!base.norm(e).known_equal(PowerValue::one())) {
            throw std::invalid_argument(
                "presentation_norm: base must give unit vectors norm 1");
        }
    }
}

std::vector<Rat> primitive_of(const std::vector<Rat>& v, Rat* scale) {
    // v = scale * primitive integer vector.
    Int l = 1;
    for (const auto& x : v) l = lcm(l, denominator(x));
    std::vector<Int> ints;
    Int g = 0;
    for (const auto& x : v) {
        Int y = numerator(x * Rat(l));
        ints.push_back(y);
        g = gcd(g, y);
    }
    if (g == 0) g = 1;
    std::vector<Rat> prim;
    prim.reserve(v.size());
    for (const auto& y : ints) prim.push_back(Rat(y / g));
    *scale = Rat(g, l);
    return prim;
}

}  // namespace

PresentationCertificate presentation_norm(const std::vector<Rat>& target,
                                          const NormedLattice& base,
                                          const HaloDescriptor& s,
                                          const SearchBudget& budget) {
    if (target.size() != base.rank)
        throw std::invalid_argument("presentation_norm: dimension mismatch");
    if (s.ring == RingId::Z)
        throw std::invalid_argument("presentation_norm: context must extend the base ring");
    require_unit_basis(base);
    const HaloDescriptor lip_s = s.flavor == Flavor::Short ? lip_functor(s) : s;
    const PowerValue c = lip_s.lip_c;

    PresentationCertificate cert;
    if (std::all_of(target.begin(), target.end(), [](const Rat& r) { return r == 0; })) {
        cert.lower = cert.upper = PowerValue::zero();
        return cert;
    }

    // Evaluation lower bound: |target_i|_S <= ||target|| * |coordinate
    // functional|^vee, and the dual coordinate functionals have norm 1 on a
    // unit-basis lattice.
    std::vector<PowerValue> coord_norms;
    for (const auto& t : target) coord_norms.push_back(s.norm(t));
    cert.lower = max_norm(coord_norms);

    // Candidate presentations. The coordinate presentation sum_i e_i (x) t_i
    // is always available; a single primitive-vector term often improves the
    // real case.
    std::vector<Presentation> candidates;
    {
        Presentation coords;
        for (std::size_t i = 0; i < target.size(); ++i) {
            if (target[i] == 0) continue;
            std::vector<Rat> e(target.size(), Rat(0));
            e[i] = 1;
            coords.terms.emplace_back(std::move(e), target[i]);
        }
        candidates.push_back(std::move(coords));
    }
    {
        Rat scale;
        auto prim = primitive_of(target, &scale);
        Presentation single;
        single.terms.emplace_back(std::move(prim), scale);
        candidates.push_back(std::move(single));
    }
    (void)budget;

    bool have = false;
    for (const auto& pres : candidates) {
        PowerValue v = presentation_value(pres, base, lip_s, c);
        if (!have || PowerValue::cmp(v, cert.upper) == Cmp::Less) {
            cert.upper = v;
            cert.witness = pres;
            have = true;
        }
    }

    cert.gap = !cert.bounds_meet();
    return cert;
}

QuotientCertificate quotient_norm(const std::vector<Rat>& c, const RatMatrix& projection,
                                  const NormedLattice& fiber, const SearchBudget& budget) {
    if (projection.rows() != c.size())
        throw std::invalid_argument("quotient_norm: target dimension mismatch");
    if (projection.cols() != fiber.rank)
        throw std::invalid_argument("quotient_norm: fiber dimension mismatch");
    if (!projection.is_integral())
        throw std::invalid_argument("quotient_norm: projection must be integral");

    QuotientCertificate cert;
    if (std::all_of(c.begin(), c.end(), [](const Rat& r) { return r == 0; })) {
        cert.lower = cert.upper = PowerValue::zero();
        cert.witness_preimage.assign(fiber.rank, Rat(0));
        return cert;
    }
    std::vector<Int> rhs;
    rhs.reserve(c.size());
    for (const auto& x : c) {
        if (!is_integer(x))
            throw std::invalid_argument("quotient_norm: target must be integral");
        rhs.push_back(numerator(x));
    }
    auto pre = projection.integer_solve(rhs);
    if (!pre) throw std::invalid_argument("quotient_norm: target not in the image lattice");
    std::vector<Rat> c0;
    c0.reserve(pre->size());
    for (const auto& x : *pre) c0.push_back(Rat(x));

    auto kernel = projection.integer_kernel_basis();
    cert.kernel_rank = kernel.size();
    if (kernel.empty()) {
        cert.lower = cert.upper = fiber.norm(c0);
        cert.witness_preimage = c0;
        return cert;
    }
    if (!fiber.box_searchable()) {
        throw std::invalid_argument("quotient_norm: fiber lattice is not box-searchable");
    }

    // Initial upper bound from the particular preimage.
    PowerValue upper = fiber.norm(c0);
    std::vector<Rat> best = c0;
    const std::size_t r = kernel.size();

    // Coordinates bound coefficients: with the rational pseudo-inverse P of
    // the kernel matrix, |t_j| <= ||P_j||_1 * max|k_d| for any kernel point.
    RatMatrix kmat(fiber.rank, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t d = 0; d < fiber.rank; ++d) kmat.at(d, j) = Rat(kernel[j][d]);
    RatMatrix gram = kmat.transpose() * kmat;
    auto gram_inv = gram.inverse();
    if (!gram_inv) throw std::logic_error("quotient_norm: kernel basis not independent");
    RatMatrix pinv = (*gram_inv) * kmat.transpose();  // r x rank
    Rat row_norm_max = 0;
    for (std::size_t j = 0; j < r; ++j) {
        Rat s = 0;
        for (std::size_t d = 0; d < fiber.rank; ++d) s += abs(pinv.at(j, d));
        row_norm_max = std::max(row_norm_max, s);
    }
    Rat c0_inf = 0;
    for (const auto& x : c0) c0_inf = std::max(c0_inf, abs(x));

    // Search radius: explicit from the budget, or derived from the upper
    // bound so that every kernel point outside the box provably yields a
    // preimage of norm above the initial upper bound.
    Int radius;
    if (budget.kernel_radius > 0) {
        radius = budget.kernel_radius;
    } else {
        Int coord_box = *fiber.box_for_norm(upper);
        Rat needed = (Rat(coord_box) + c0_inf) * row_norm_max;
        radius = numerator(needed) / denominator(needed) + 1;
    }
    // Node-cap clamp: (2 radius + 1)^r enumerated points.
    bool clamped = false;
    {
        Int points = 1;
        Int width = 2 * radius + 1;
        for (std::size_t j = 0; j < r && points <= budget.max_nodes; ++j) points *= width;
        while (points > budget.max_nodes && radius > 1) {
            radius -= 1;
            clamped = true;
            points = 1;
            width = 2 * radius + 1;
            for (std::size_t j = 0; j < r && points <= budget.max_nodes; ++j) points *= width;
        }
    }

    std::vector<Int> t(r, 0);
    std::function<void(std::size_t)> walk = [&](std::size_t j) {
        if (j == r) {
            std::vector<Rat> point = c0;
            for (std::size_t k = 0; k < r; ++k) {
                if (t[k] == 0) continue;
                for (std::size_t d = 0; d < fiber.rank; ++d)
                    point[d] += Rat(t[k]) * Rat(kernel[k][d]);
            }
            PowerValue v = fiber.norm(point);
            if (PowerValue::cmp(v, upper) == Cmp::Less) {
                upper = v;
                best = point;
            }
            return;
        }
        for (Int v = -radius; v <= radius; ++v) {
            t[j] = v;
            walk(j + 1);
        }
        t[j] = 0;
    };
    walk(0);
    cert.upper = upper;
    cert.witness_preimage = best;

    // Certified lower bound: coefficient vectors outside the searched box
    // have some kernel coordinate above B_cov = radius / max_j ||P_j||_1, so
    // the preimage has a coordinate above B_cov - |c0|_inf and the fiber's
    // coordinate floor applies.
    Rat b_cov = row_norm_max == 0 ? Rat(0) : Rat(radius) / row_norm_max;
    Rat outside_coord = b_cov - c0_inf;
    PowerValue outside_floor = fiber.coord_norm_floor
                                   ? fiber.coord_norm_floor(outside_coord)
                                   : PowerValue::zero();
    if (!clamped && cmp_is_geq(PowerValue::cmp(outside_floor, cert.upper))) {
        cert.lower = cert.upper;
        cert.gap = false;
    } else {
        cert.lower =
            PowerValue::cmp(outside_floor, cert.upper) == Cmp::Less ? outside_floor : cert.upper;
        cert.gap = true;
    }
    return cert;
}

}  // namespace halo
