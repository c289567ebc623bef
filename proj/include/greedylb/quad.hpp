#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "greedylb/rational.hpp"

namespace greedylb {

/// Exact arithmetic in the field Q(sqrt2, sqrt3): numbers
/// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational a,b,c,d.
///
/// This is the number type of the rational-with-roots mode: it covers every
/// sqrt(r) needed by the Delta_k machinery at scale n_k <= 4 (sqrt of
/// 1,2,3,4,6,8,... i.e. r = s^2 * t with squarefree part t in {1,2,3,6}).
/// Sign determination is exact via nested squared comparisons.
class Quad {
 public:
  Quad() = default;
  Quad(int v) : a_(v) {}
  Quad(long v) : a_(v) {}
  Quad(const Rat& v) : a_(v) {}
  Quad(Rat a, Rat b, Rat c, Rat d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  /// Exact sqrt(n) for n >= 0 when representable; nullopt otherwise.
  static std::optional<Quad> sqrt_int(long n);
  /// sqrt(n) or throws for unrepresentable radicands.
  static Quad sqrt_int_checked(long n);

  bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
  bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
  const Rat& rational_part() const { return a_; }

  int sign() const;
  double to_double() const;
  std::string str() const;

  Quad operator-() const { return Quad(-a_, -b_, -c_, -d_); }
  Quad& operator+=(const Quad& o);
  Quad& operator-=(const Quad& o);
  Quad& operator*=(const Quad& o);
  Quad& operator/=(const Quad& o);

  friend Quad operator+(Quad l, const Quad& r) { return l += r; }
  friend Quad operator-(Quad l, const Quad& r) { return l -= r; }
  friend Quad operator*(Quad l, const Quad& r) { return l *= r; }
  friend Quad operator/(Quad l, const Quad& r) { return l /= r; }

  friend bool operator==(const Quad& l, const Quad& r) { return (l - r).is_zero(); }
  friend bool operator!=(const Quad& l, const Quad& r) { return !(l == r); }
  friend bool operator<(const Quad& l, const Quad& r) { return (l - r).sign() < 0; }
  friend bool operator>(const Quad& l, const Quad& r) { return (l - r).sign() > 0; }
  friend bool operator<=(const Quad& l, const Quad& r) { return (l - r).sign() <= 0; }
  friend bool operator>=(const Quad& l, const Quad& r) { return (l - r).sign() >= 0; }

 private:
  Rat a_, b_, c_, d_;
};

inline Quad abs(const Quad& x) { return x.sign() < 0 ? -x : x; }

}  // namespace greedylb
