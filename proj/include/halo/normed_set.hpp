#pragma once

#include "halo/power_value.hpp"

#include <map>
#include <string>
#include <vector>

namespace halo {

/// Exponent p in (0, infinity].
struct PExponent {
    bool infinite = false;
    Rat value = 1;  // meaningful when finite

    static PExponent inf() { return PExponent{true, Rat(0)}; }
    static PExponent of(const Rat& v) {
        if (v <= 0) throw std::invalid_argument("PExponent: p must be > 0");
        return PExponent{false, v};
    }
    static PExponent parse(const std::string& s);

    bool operator==(const PExponent& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    /// Order of (0, inf]: p <= q with inf on top.
    bool leq(const PExponent& o) const {
        if (o.infinite) return true;
        if (infinite) return false;
        return value <= o.value;
    }
    /// p / t; infinity is fixed.
    PExponent divided_by(const Rat& t) const {
        if (infinite) return *this;
        return of(value / t);
    }
    std::string str() const { return infinite ? "inf" : rat_str(value); }
};

/// (sum_i x_i^p)^{1/p}, or max for p = inf. Exact when every term stays
/// rational under the p-th power, otherwise a certified interval.
PowerValue lp_norm(const std::vector<PowerValue>& xs, const PExponent& p,
                   unsigned prec_bits = 64);

/// Max of a tuple; falls back to an interval hull when comparisons are
/// undecided at the working precision.
PowerValue max_norm(const std::vector<PowerValue>& xs);

/// Finite normed set: opaque element ids with nonnegative norms.
struct NormedSet {
    std::vector<std::string> elements;
    std::map<std::string, PowerValue> norm;
};

/// sigma_t: same elements, every norm raised to the t-th power (t > 0).
NormedSet flow_normed_set(const NormedSet& x, const Rat& t);

}  // namespace halo
