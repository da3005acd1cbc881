#include "halo/spectral.hpp"

#include <algorithm>
#include <stdexcept>

namespace halo {

namespace {

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_rem(Poly a, const Poly& b) {
    poly_trim(a);
    if (b.empty()) throw std::invalid_argument("poly_rem: division by zero polynomial");
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        poly_trim(a);
    }
    return a;
}

int sign_of(const Rat& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Poly poly_gcd(Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
    Poly rem = a;
    poly_trim(rem);
    Poly q(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rat(0));
    while (rem.size() >= b.size() && !rem.empty()) {
        Rat f = rem.back() / b.back();
        std::size_t shift = rem.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
        poly_trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("poly_div_exact: non-zero remainder");
    return q;
}

int sign_variations(const std::vector<Poly>& chain, const Rat& x) {
    int variations = 0, last = 0;
    for (const auto& p : chain) {
        int s = sign_of(poly_eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

}  // namespace

Rat poly_eval(const Poly& p, const Rat& x) {
    Rat acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    return d;
}

Poly charpoly(const RatMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("charpoly: non-square input");
    const std::size_t n = a.rows();
    // Faddeev-LeVerrier: M_0 = I, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I,
    // c_{n-k} = -tr(A M_k)/k.
    std::vector<Rat> c(n + 1);
    c[n] = 1;
    RatMatrix m = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix am = a * m;
        Rat tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am.at(i, i);
        c[n - k] = -tr / Rat(static_cast<long>(k));
        if (k < n) {
            m = am;
            for (std::size_t i = 0; i < n; ++i) m.at(i, i) += c[n - k];
        }
    }
    return c;
}

std::vector<Poly> sturm_chain(Poly p) {
    poly_trim(p);
    std::vector<Poly> chain;
    if (p.empty()) return chain;
    // Sturm's theorem needs a squarefree polynomial; divide by gcd(p, p').
    // The root set is unchanged.
    Poly g = poly_gcd(p, poly_derivative(p));
    if (g.size() > 1) p = poly_div_exact(p, g);
    chain.push_back(p);
    Poly d = poly_derivative(p);
    poly_trim(d);
    if (!d.empty()) chain.push_back(d);
    while (chain.back().size() > 1) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& coeff : r) coeff = -coeff;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sturm_count_roots(const std::vector<Poly>& chain, const Rat& a, const Rat& b) {
    if (chain.empty()) return 0;
    if (b < a) throw std::invalid_argument("sturm_count_roots: empty interval");
    return sign_variations(chain, a) - sign_variations(chain, b);
}

std::pair<Rat, Rat> lambda_max_bracket(const RatMatrix& sym, const Rat& width) {
    if (!sym.is_symmetric()) throw std::invalid_argument("lambda_max_bracket: non-symmetric");
    if (width <= 0) throw std::invalid_argument("lambda_max_bracket: width <= 0");
    const std::size_t n = sym.rows();
    // Gershgorin bound.
    Rat bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < n; ++j) s += abs(sym.at(i, j));
        bound = std::max(bound, s);
    }
    Rat hi = bound + 1;
    Rat lo = -hi;
    auto chain = sturm_chain(charpoly(sym));
    // Invariant: at least one root in (lo, hi], none above hi. A symmetric
    // rational matrix always has n real eigenvalues, so the bracket is sound.
    while (hi - lo > width) {
        Rat mid = (lo + hi) / 2;
        if (sturm_count_roots(chain, mid, hi) >= 1) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

bool l2_norm_leq(const RatMatrix& a, const Rat& r) {
    if (r < 0) return false;
    RatMatrix g = a.transpose() * a;
    return is_psd(RatMatrix::identity(g.rows()).scaled(r * r) - g);
}

bool l2_norm_lt(const RatMatrix& a, const Rat& r) {
    if (r <= 0) return false;
    RatMatrix g = a.transpose() * a;
    return is_pd(RatMatrix::identity(g.rows()).scaled(r * r) - g);
}

namespace {

// Attempt to pin lambda_max exactly: integer candidates in the bracket plus
// small-denominator rationals found by a Stern-Brocot walk.
std::optional<Rat> exact_lambda_in(const std::vector<Poly>& chain, const Poly& p,
                                   const Rat& lo, const Rat& hi) {
    auto is_top_root = [&](const Rat& x) {
        return poly_eval(p, x) == 0 && sturm_count_roots(chain, x, hi) == 0 && x > lo &&
               x <= hi;
    };
    // Integers in (lo, hi].
    Int fl = numerator(lo) / denominator(lo);
    for (Int k = fl - 1; Rat(k) <= hi; ++k) {
        if (Rat(k) > lo && is_top_root(Rat(k))) return Rat(k);
    }
    // Stern-Brocot: mediants with denominator cap.
    Rat a = lo, b = hi;
    Int an = numerator(a), ad = denominator(a);
    Int bn = numerator(b), bd = denominator(b);
    for (int steps = 0; steps < 128; ++steps) {
        if (ad + bd > 1024) break;
        Rat med(an + bn, ad + bd);
        if (med > lo && med <= hi) {
            if (is_top_root(med)) return med;
        }
        if (med <= lo) {
            an += bn;
            ad += bd;
        } else if (med > hi) {
            bn += an;
            bd += ad;
        } else {
            break;  // mediant strictly inside and not a root: give up
        }
    }
    return std::nullopt;
}

}  // namespace

PowerValue l2_operator_norm(const RatMatrix& a, unsigned prec_bits) {
    RatMatrix g = a.transpose() * a;
    if (g.is_zero()) return PowerValue::zero();
    Poly p = charpoly(g);
    auto chain = sturm_chain(p);
    Rat width(1, 16);
    auto bracket = lambda_max_bracket(g, width);
    if (auto lam = exact_lambda_in(chain, p, bracket.first, bracket.second)) {
        return PowerValue::pow_of(*lam, Rat(1, 2));
    }
    // Narrow to the requested relative precision, then take square-root
    // brackets. lambda_max >= some positive floor since G != 0: use the
    // current bracket's lower end once it separates from zero.
    Rat lo = bracket.first, hi = bracket.second;
    while (lo <= 0) {
        width /= 16;
        auto b = lambda_max_bracket(g, width);
        lo = b.first;
        hi = b.second;
        if (width < Rat(1, Int(1) << 128)) {
            throw std::runtime_error("l2_operator_norm: cannot separate lambda_max from 0");
        }
    }
    // Relative narrowing.
    Rat target = lo * Rat(1, Int(1) << (prec_bits + 1));
    while (hi - lo > target) {
        Rat mid = (lo + hi) / 2;
        if (sturm_count_roots(chain, mid, hi) >= 1) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (auto lam = exact_lambda_in(chain, p, lo, hi)) {
            return PowerValue::pow_of(*lam, Rat(1, 2));
        }
    }
    auto rlo = nth_root_enclosure(lo, 2, prec_bits + 2);
    auto rhi = nth_root_enclosure(hi, 2, prec_bits + 2);
    return PowerValue::interval(rlo.first, rhi.second);
}

}  // namespace halo
