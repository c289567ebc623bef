#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace greedylb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline int rat_sign(const Rat& x) { return x < 0 ? -1 : (x > 0 ? 1 : 0); }

/// Exact embedding of an IEEE double (finite values only).
Rat rat_from_double(double x);

/// Parses "p/q", an integer, or a plain decimal like "-1.25". Empty on failure.
std::optional<Rat> rat_parse(std::string_view s);

/// Canonical text form: "n" for integers, "p/q" otherwise.
std::string rat_str(const Rat& x);

/// x^e for integer e (e < 0 requires x != 0).
Rat rat_pow(const Rat& x, long e);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

}  // namespace greedylb
