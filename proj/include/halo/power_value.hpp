#pragma once

#include "halo/rational.hpp"

#include <optional>
#include <string>
#include <utility>

namespace halo {

enum class Cmp { Less, Equal, Greater, Unknown };

inline bool cmp_is_leq(Cmp c) { return c == Cmp::Less || c == Cmp::Equal; }
inline bool cmp_is_geq(Cmp c) { return c == Cmp::Greater || c == Cmp::Equal; }

/// An exact nonnegative real of the form base^exponent (base, exponent
/// rational, base >= 0), or a certified rational interval [lo, hi] that
/// brackets the true value. Every norm value in the library lives here.
///
/// Exact values are kept canonical:
///   - 0 is stored as 0^1, 1 as 1^1;
///   - integer exponents of moderate size are evaluated to a plain rational;
///   - fractional exponents a/d are reduced by extracting exact d-th roots
///     of the base, so a canonical exponent denominator d > 1 certifies that
///     the value is irrational.
class PowerValue {
public:
    PowerValue() : PowerValue(zero()) {}

    static PowerValue zero() { return from_rat(Rat(0)); }
    static PowerValue one() { return from_rat(Rat(1)); }
    static PowerValue from_rat(const Rat& r);
    static PowerValue pow_of(const Rat& base, const Rat& exponent);
    static PowerValue interval(const Rat& lo, const Rat& hi);

    bool is_exact() const { return exact_; }
    bool is_interval() const { return !exact_; }
    /// Exact with exponent 1.
    bool is_rational() const { return exact_ && exp_den_ == 1; }
    bool is_zero() const { return exact_ ? base_ == 0 : (lo_ == 0 && hi_ == 0); }

    const Rat& base() const { return base_; }
    Rat exponent() const { return Rat(exp_num_, exp_den_); }
    const Rat& lo() const { return lo_; }  // interval only
    const Rat& hi() const { return hi_; }  // interval only

    /// Requires is_rational().
    Rat rat() const;

    /// Raises to the t-th power (t rational, t > 0; t <= 0 allowed for
    /// nonzero exact values).
    PowerValue pow(const Rat& t) const;

    friend PowerValue operator*(const PowerValue& a, const PowerValue& b);

    /// Certified sum. Exact when both operands are rational, otherwise an
    /// interval at roughly `prec_bits` relative precision.
    PowerValue add(const PowerValue& other, unsigned prec_bits = 64) const;

    /// Rational bracket [lo, hi] with lo <= value <= hi; endpoints coincide
    /// when the value is rational. Relative width about 2^-prec_bits.
    std::pair<Rat, Rat> enclosure(unsigned prec_bits = 64) const;

    /// Total order on exact values; intervals compare Unknown unless
    /// disjoint or pointwise equal.
    static Cmp cmp(const PowerValue& a, const PowerValue& b);

    bool known_equal(const PowerValue& o) const { return cmp(*this, o) == Cmp::Equal; }
    bool known_leq(const PowerValue& o) const { return cmp_is_leq(cmp(*this, o)); }

    double approx() const;
    std::string str() const;

private:
    PowerValue(bool exact, Rat base, Int exp_num, Int exp_den, Rat lo, Rat hi)
        : exact_(exact), base_(std::move(base)), exp_num_(std::move(exp_num)),
          exp_den_(std::move(exp_den)), lo_(std::move(lo)), hi_(std::move(hi)) {}

    static PowerValue make_exact(Rat base, Rat exponent);

    bool exact_;
    Rat base_;          // exact form: base >= 0
    Int exp_num_{1};    // exact form: exponent = exp_num_/exp_den_, exp_den_ >= 1
    Int exp_den_{1};
    Rat lo_, hi_;       // interval form: 0 <= lo <= hi
};

/// Decides r^t vs s^u by clearing exponent denominators and comparing
/// big-integer powers; interval inputs may yield Unknown.
inline Cmp cmp_power(const PowerValue& a, const PowerValue& b) { return PowerValue::cmp(a, b); }

/// d-th root bracket of a nonnegative rational; exact when a rational root
/// exists.
std::pair<Rat, Rat> nth_root_enclosure(const Rat& x, unsigned d, unsigned prec_bits);

}  // namespace halo
