#include "halo/rational.hpp"

#include <boost/multiprecision/integer.hpp>

namespace halo {

Int ipow(const Int& base, const Int& exp) {
    if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
    Int result = 1;
    Int b = base;
    Int e = exp;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) result *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return result;
}

Rat rpow(const Rat& base, const Int& exp) {
    if (exp == 0) return Rat(1);
    if (base == 0) {
        if (exp < 0) throw std::invalid_argument("rpow: 0 to a negative power");
        return Rat(0);
    }
    const Int e = exp < 0 ? Int(-exp) : exp;
    Rat r(ipow(numerator(base), e), ipow(denominator(base), e));
    if (exp < 0) r = Rat(1) / r;
    return r;
}

Int nth_root_floor(const Int& x, unsigned k) {
    if (x < 0) throw std::invalid_argument("nth_root_floor: negative radicand");
    if (k == 0) throw std::invalid_argument("nth_root_floor: k = 0");
    if (x == 0 || x == 1 || k == 1) return x;
    // Newton iteration from an upper bound derived from the bit length.
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    Int r = Int(1) << (bits / k + 1);
    while (true) {
        // r_{next} = ((k-1)*r + x / r^{k-1}) / k
        Int rk1 = ipow(r, Int(k - 1));
        Int next = ((k - 1) * r + x / rk1) / k;
        if (next >= r) break;
        r = next;
    }
    while (ipow(r, Int(k)) > x) --r;
    while (ipow(r + 1, Int(k)) <= x) ++r;
    return r;
}

std::optional<Int> exact_nth_root(const Int& x, unsigned k) {
    if (x < 0) return std::nullopt;
    Int r = nth_root_floor(x, k);
    if (ipow(r, Int(k)) == x) return r;
    return std::nullopt;
}

std::optional<Rat> exact_nth_root(const Rat& x, unsigned k) {
    if (x < 0) return std::nullopt;
    auto n = exact_nth_root(numerator(x), k);
    if (!n) return std::nullopt;
    auto d = exact_nth_root(denominator(x), k);
    if (!d) return std::nullopt;
    return Rat(*n, *d);
}

Rat parse_rat(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + s + "'"); };
    if (s.empty()) bad();
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) bad();
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat(0);  // unreachable
}

std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

}  // namespace halo
