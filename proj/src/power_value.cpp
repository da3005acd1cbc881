#include "halo/power_value.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <sstream>
#include <vector>

namespace halo {

namespace {

// Evaluating base^e to a plain rational is worthwhile only while the result
// stays desk-sized.
bool evaluation_fits(const Rat& base, const Int& e) {
    if (e == 0) return true;
    Int mag = e < 0 ? Int(-e) : e;
    if (mag > 100000) return false;
    unsigned base_bits = 1;
    if (numerator(base) != 0) {
        base_bits = static_cast<unsigned>(boost::multiprecision::msb(
                        boost::multiprecision::abs(numerator(base)))) + 1;
        unsigned den_bits = static_cast<unsigned>(
            boost::multiprecision::msb(denominator(base))) + 1;
        base_bits = std::max(base_bits, den_bits);
    }
    return Int(base_bits) * mag <= 1 << 20;
}

}  // namespace

PowerValue PowerValue::from_rat(const Rat& r) {
    if (r < 0) throw std::invalid_argument("PowerValue: negative rational");
    return PowerValue(true, r, Int(1), Int(1), Rat(0), Rat(0));
}

PowerValue PowerValue::interval(const Rat& lo, const Rat& hi) {
    if (lo < 0 || hi < lo) throw std::invalid_argument("PowerValue: bad interval");
    if (lo == hi) return from_rat(lo);
    return PowerValue(false, Rat(0), Int(1), Int(1), lo, hi);
}

PowerValue PowerValue::make_exact(Rat base, Rat exponent) {
    if (base < 0) throw std::invalid_argument("PowerValue: negative base");
    if (base == 0) {
        if (exponent <= 0) throw std::invalid_argument("PowerValue: 0^t needs t > 0");
        return PowerValue(true, Rat(0), Int(1), Int(1), Rat(0), Rat(0));
    }
    if (exponent == 0 || base == 1) return one();
    Int a = numerator(exponent);
    Int d = denominator(exponent);
    // Extract exact roots prime factor by prime factor, so that a remaining
    // d > 1 certifies the value is irrational.
    if (d > 1) {
        std::vector<Int> primes;
        Int rest = d;
        for (Int q = 2; q * q <= rest; ++q) {
            while (rest % q == 0) { primes.push_back(q); rest /= q; }
        }
        if (rest > 1) primes.push_back(rest);
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto& q : primes) {
                if (q == 1) continue;
                auto root = exact_nth_root(base, static_cast<unsigned>(q));
                if (root) {
                    base = *root;
                    d /= q;
                    q = 1;
                    progress = true;
                }
            }
        }
    }
    if (d == 1 && evaluation_fits(base, a)) {
        return PowerValue(true, rpow(base, a), Int(1), Int(1), Rat(0), Rat(0));
    }
    // Normalize sign into the numerator and keep base > 1 when cheap: not
    // required for correctness, comparisons clear denominators anyway.
    return PowerValue(true, base, a, d, Rat(0), Rat(0));
}

PowerValue PowerValue::pow_of(const Rat& base, const Rat& exponent) {
    return make_exact(base, exponent);
}

Rat PowerValue::rat() const {
    if (!is_rational()) throw std::logic_error("PowerValue: not a plain rational");
    return rpow(base_, exp_num_);
}

PowerValue PowerValue::pow(const Rat& t) const {
    if (exact_) {
        if (base_ == 0) {
            if (t <= 0) throw std::invalid_argument("PowerValue: 0^t needs t > 0");
            return zero();
        }
        return make_exact(base_, exponent() * t);
    }
    if (t <= 0) throw std::invalid_argument("PowerValue: interval^t needs t > 0");
    PowerValue vlo = lo_ == 0 ? zero() : make_exact(lo_, t);
    PowerValue vhi = make_exact(hi_, t);
    auto elo = vlo.enclosure();
    auto ehi = vhi.enclosure();
    return interval(elo.first, ehi.second);
}

PowerValue operator*(const PowerValue& a, const PowerValue& b) {
    if (a.is_zero() || b.is_zero()) return PowerValue::zero();
    if (a.exact_ && b.exact_) {
        if (a.base_ == b.base_) {
            return PowerValue::make_exact(a.base_, a.exponent() + b.exponent());
        }
        if (a.exponent() == b.exponent()) {
            return PowerValue::make_exact(a.base_ * b.base_, a.exponent());
        }
        if (a.is_rational() && b.is_rational()) {
            return PowerValue::from_rat(a.rat() * b.rat());
        }
        // b1^(a1/d1) * b2^(a2/d2) = (b1^(a1*L/d1) * b2^(a2*L/d2))^(1/L)
        Int L = lcm(a.exp_den_, b.exp_den_);
        Rat x = rpow(a.base_, a.exp_num_ * (L / a.exp_den_));
        Rat y = rpow(b.base_, b.exp_num_ * (L / b.exp_den_));
        return PowerValue::make_exact(x * y, Rat(1, L));
    }
    auto ea = a.enclosure();
    auto eb = b.enclosure();
    return PowerValue::interval(ea.first * eb.first, ea.second * eb.second);
}

PowerValue PowerValue::add(const PowerValue& other, unsigned prec_bits) const {
    if (is_zero()) return other;
    if (other.is_zero()) return *this;
    if (is_rational() && other.is_rational()) return from_rat(rat() + other.rat());
    auto ea = enclosure(prec_bits);
    auto eb = other.enclosure(prec_bits);
    return interval(ea.first + eb.first, ea.second + eb.second);
}

std::pair<Rat, Rat> nth_root_enclosure(const Rat& x, unsigned d, unsigned prec_bits) {
    if (x < 0) throw std::invalid_argument("nth_root_enclosure: negative radicand");
    if (x == 0) return {Rat(0), Rat(0)};
    if (d == 1) return {x, x};
    if (auto r = exact_nth_root(x, d)) return {*r, *r};
    // Scale so that the floor root carries prec_bits significant bits.
    unsigned shift = prec_bits + 4;
    while (true) {
        Int M = Int(1) << shift;
        Int t = (numerator(x) * ipow(M, Int(d))) / denominator(x);
        Int r = nth_root_floor(t, d);
        if (r >= (Int(1) << prec_bits)) {
            return {Rat(r, M), Rat(r + 1, M)};
        }
        shift += prec_bits;
    }
}

std::pair<Rat, Rat> PowerValue::enclosure(unsigned prec_bits) const {
    if (!exact_) return {lo_, hi_};
    if (is_rational()) {
        Rat v = rat();
        return {v, v};
    }
    // base^(a/d) with d > 1: bracket the d-th root of base^a.
    if (!evaluation_fits(base_, exp_num_)) {
        throw std::runtime_error("PowerValue: exponent too large to enclose");
    }
    return nth_root_enclosure(rpow(base_, exp_num_), static_cast<unsigned>(exp_den_),
                              prec_bits);
}

Cmp PowerValue::cmp(const PowerValue& a, const PowerValue& b) {
    if (a.exact_ && b.exact_) {
        if (a.is_zero() || b.is_zero()) {
            if (a.is_zero() && b.is_zero()) return Cmp::Equal;
            return a.is_zero() ? Cmp::Less : Cmp::Greater;
        }
        if (a.is_rational() && b.is_rational()) {
            Rat x = a.rat(), y = b.rat();
            if (x == y) return Cmp::Equal;
            return x < y ? Cmp::Less : Cmp::Greater;
        }
        // Compare b1^(a1/d1) and b2^(a2/d2) via the common exponent
        // denominator: both sides raised to lcm(d1,d2) are rational.
        Int L = lcm(a.exp_den_, b.exp_den_);
        Int e1 = a.exp_num_ * (L / a.exp_den_);
        Int e2 = b.exp_num_ * (L / b.exp_den_);
        Rat x = rpow(a.base_, e1);
        Rat y = rpow(b.base_, e2);
        if (x == y) return Cmp::Equal;
        return x < y ? Cmp::Less : Cmp::Greater;
    }
    auto ea = a.enclosure();
    auto eb = b.enclosure();
    if (ea.second < eb.first) return Cmp::Less;
    if (eb.second < ea.first) return Cmp::Greater;
    if (ea.first == ea.second && eb.first == eb.second) return Cmp::Equal;
    return Cmp::Unknown;
}

double PowerValue::approx() const {
    auto e = enclosure(53);
    return (static_cast<double>(e.first) + static_cast<double>(e.second)) / 2.0;
}

std::string PowerValue::str() const {
    std::ostringstream os;
    if (exact_) {
        if (is_rational()) {
            os << rat_str(rat());
        } else {
            os << rat_str(base_) << "^(" << rat_str(exponent()) << ")";
        }
    } else {
        os << "[" << rat_str(lo_) << ", " << rat_str(hi_) << "]";
    }
    return os.str();
}

}  // namespace halo
