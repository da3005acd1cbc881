#include "halo/padic.hpp"

namespace halo {

namespace {

constexpr long kTrialDivisionBound = 1000000;

bool passes_trial_division(const Int& p) {
    if (p < 2) return false;
    if (p == 2) return true;
    if (p % 2 == 0) return false;
    for (Int q = 3; q * q <= p && q <= kTrialDivisionBound; q += 2) {
        if (p % q == 0) return false;
    }
    return true;
}

Int int_valuation(Int n, const Int& p) {
    Int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace

PAdicContext::PAdicContext(Int prime) : p(std::move(prime)) {
    if (!passes_trial_division(p)) {
        throw std::invalid_argument("PAdicContext: " + p.str() + " is not prime");
    }
}

Int padic_valuation(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("padic_valuation: x = 0");
    return int_valuation(numerator(x), p) - int_valuation(denominator(x), p);
}

PowerValue padic_abs(const Rat& x, const PAdicContext& ctx) {
    if (x == 0) return PowerValue::zero();
    Int v = padic_valuation(x, ctx.p);
    return PowerValue::pow_of(Rat(ctx.p), Rat(-v));
}

}  // namespace halo
