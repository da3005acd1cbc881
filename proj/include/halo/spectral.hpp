#pragma once

#include "halo/matrix.hpp"
#include "halo/power_value.hpp"

#include <vector>

namespace halo {

/// Polynomial with rational coefficients, coeffs[i] on x^i.
using Poly = std::vector<Rat>;

Rat poly_eval(const Poly& p, const Rat& x);
Poly poly_derivative(const Poly& p);

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.
Poly charpoly(const RatMatrix& a);

/// Sturm chain of p (squarefree part handled internally).
std::vector<Poly> sturm_chain(Poly p);

/// Number of distinct real roots in (a, b].
int sturm_count_roots(const std::vector<Poly>& chain, const Rat& a, const Rat& b);

/// Bracket [lo, hi] around the largest real eigenvalue of a symmetric
/// matrix, narrowed to width <= `width`. The bracket is certified: no root
/// lies above hi and at least one lies in (lo, hi].
std::pair<Rat, Rat> lambda_max_bracket(const RatMatrix& sym, const Rat& width);

/// Exact decision ||A||_{l2} <= r (largest singular value), via PSD of
/// r^2 I - A^T A.
bool l2_norm_leq(const RatMatrix& a, const Rat& r);

/// Exact decision ||A||_{l2} < r, via positive definiteness.
bool l2_norm_lt(const RatMatrix& a, const Rat& r);

/// Certified l2 operator norm: exact (a PowerValue lambda^{1/2}) whenever
/// lambda_max(A^T A) is rational, otherwise an interval of roughly
/// 2^-prec_bits relative width.
PowerValue l2_operator_norm(const RatMatrix& a, unsigned prec_bits = 64);

}  // namespace halo
