#pragma once

#include "halo/power_value.hpp"
#include "halo/rational.hpp"

namespace halo {

/// A prime p. Primality is certified by trial division for p < 10^6; larger
/// inputs are only screened for small factors (documented caveat: a
/// composite with no factor below 10^6 would be accepted).
struct PAdicContext {
    Int p;

    explicit PAdicContext(Int prime);

    bool operator==(const PAdicContext& o) const { return p == o.p; }
};

/// v_p(x) for x != 0. Throws for x == 0.
Int padic_valuation(const Rat& x, const Int& p);

/// |x|_p = p^{-v_p(x)}, exactly; |0|_p = 0.
PowerValue padic_abs(const Rat& x, const PAdicContext& ctx);

}  // namespace halo
