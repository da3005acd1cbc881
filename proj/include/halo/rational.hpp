#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace halo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rat& r) { return r.sign(); }
inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

Int ipow(const Int& base, const Int& exp);

/// base^exp for integer exp (negative allowed when base != 0).
Rat rpow(const Rat& base, const Int& exp);

/// Largest r >= 0 with r^k <= x. Requires x >= 0, k >= 1.
Int nth_root_floor(const Int& x, unsigned k);

std::optional<Int> exact_nth_root(const Int& x, unsigned k);

/// Exact k-th root of a nonnegative rational, when one exists.
std::optional<Rat> exact_nth_root(const Rat& x, unsigned k);

/// Parses "n" or "n/d" (d > 0 after normalization). Throws std::invalid_argument.
Rat parse_rat(const std::string& s);

/// Renders as "n" or "n/d".
std::string rat_str(const Rat& r);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

}  // namespace halo
