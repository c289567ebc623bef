#include "greedylb/quad.hpp"

#include <cmath>
#include <sstream>

namespace greedylb {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite");
  if (x == 0.0) return Rat(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 doublings make the mantissa integral.
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rat r(mant);
  if (exp >= 0) {
    r *= rat_pow(Rat(2), exp);
  } else {
    r /= rat_pow(Rat(2), -exp);
  }
  return r;
}

Rat rat_pow(const Rat& x, long e) {
  if (e < 0) {
    if (x == 0) throw std::domain_error("rat_pow: 0^negative");
    return Rat(1) / rat_pow(x, -e);
  }
  Rat result(1), base(x);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  if (n == 0) return 0;
  Int x = n, y = (x + 1) / 2;
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

std::optional<Rat> rat_parse(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  if (s.empty()) return std::nullopt;
  auto parse_int = [](std::string_view v) -> std::optional<Int> {
    if (v.empty()) return std::nullopt;
    bool neg = false;
    if (v.front() == '+' || v.front() == '-') {
      neg = v.front() == '-';
      v.remove_prefix(1);
    }
    if (v.empty()) return std::nullopt;
    Int r = 0;
    for (char ch : v) {
      if (ch < '0' || ch > '9') return std::nullopt;
      r = r * 10 + (ch - '0');
    }
    return neg ? Int(-r) : r;
  };
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(s.substr(0, slash));
    auto den = parse_int(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rat(*num, *den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (!ip.empty() && (ip.front() == '+' || ip.front() == '-')) ip.remove_prefix(1);
    if (ip.empty() && fp.empty()) return std::nullopt;
    auto ipart = ip.empty() ? Int(0) : parse_int(ip).value_or(Int(-1));
    if (!ip.empty() && !parse_int(ip)) return std::nullopt;
    Int scale = 1;
    Int fpart = 0;
    for (char ch : fp) {
      if (ch < '0' || ch > '9') return std::nullopt;
      fpart = fpart * 10 + (ch - '0');
      scale *= 10;
    }
    Rat r = Rat(ipart) + Rat(fpart, scale);
    return neg ? Rat(-r) : r;
  }
  auto i = parse_int(s);
  if (!i) return std::nullopt;
  return Rat(*i);
}

std::string rat_str(const Rat& x) {
  std::ostringstream os;
  if (denominator(x) == 1) {
    os << numerator(x);
  } else {
    os << numerator(x) << '/' << denominator(x);
  }
  return os.str();
}

namespace {

// sign of s + t*sqrt(2), exact
int sign2(const Rat& s, const Rat& t) {
  int ss = rat_sign(s), st = rat_sign(t);
  if (st == 0) return ss;
  if (ss == 0) return st;
  if (ss == st) return ss;
  // opposite signs: compare s^2 vs 2 t^2
  Rat lhs = s * s, rhs = Rat(2) * t * t;
  if (lhs == rhs) return 0;  // impossible for rationals with t != 0, kept for safety
  return lhs > rhs ? ss : st;
}

}  // namespace

int Quad::sign() const {
  // x = u + v*sqrt3 with u = a + b*sqrt2, v = c + d*sqrt2
  int su = sign2(a_, b_), sv = sign2(c_, d_);
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // compare u^2 vs 3 v^2 inside Q(sqrt2)
  // u^2   = a^2 + 2 b^2 + 2ab sqrt2
  // 3 v^2 = 3c^2 + 6 d^2 + 6cd sqrt2
  Rat us = a_ * a_ + 2 * b_ * b_, ut = 2 * a_ * b_;
  Rat vs = 3 * (c_ * c_ + 2 * d_ * d_), vt = 6 * c_ * d_;
  int cmp = sign2(us - vs, ut - vt);
  if (cmp == 0) return 0;  // u^2 == 3 v^2 cannot happen for u,v != 0
  return cmp > 0 ? su : sv;
}

double Quad::to_double() const {
  static const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  return greedylb::to_double(a_) + greedylb::to_double(b_) * s2 +
         greedylb::to_double(c_) * s3 + greedylb::to_double(d_) * s6;
}

std::string Quad::str() const {
  if (is_rational()) return rat_str(a_);
  std::ostringstream os;
  os << rat_str(a_) << "+" << rat_str(b_) << "*r2+" << rat_str(c_) << "*r3+"
     << rat_str(d_) << "*r6";
  return os.str();
}

Quad& Quad::operator+=(const Quad& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

Quad& Quad::operator-=(const Quad& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

Quad& Quad::operator*=(const Quad& o) {
  // basis products: sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2
  Rat a = a_ * o.a_ + 2 * b_ * o.b_ + 3 * c_ * o.c_ + 6 * d_ * o.d_;
  Rat b = a_ * o.b_ + b_ * o.a_ + 3 * (c_ * o.d_ + d_ * o.c_);
  Rat c = a_ * o.c_ + c_ * o.a_ + 2 * (b_ * o.d_ + d_ * o.b_);
  Rat d = a_ * o.d_ + d_ * o.a_ + b_ * o.c_ + c_ * o.b_;
  a_ = std::move(a);
  b_ = std::move(b);
  c_ = std::move(c);
  d_ = std::move(d);
  return *this;
}

Quad& Quad::operator/=(const Quad& o) {
  if (o.is_zero()) throw std::domain_error("Quad division by zero");
  // Multiply by the sqrt3-conjugate, then the sqrt2-conjugate.
  Quad conj3(o.a_, o.b_, -o.c_, -o.d_);
  Quad den3 = Quad(o) * conj3;  // lies in Q(sqrt2): c == d == 0
  Quad conj2(den3.a_, -den3.b_, Rat(0), Rat(0));
  Rat den = den3.a_ * den3.a_ - 2 * den3.b_ * den3.b_;  // rational
  if (den == 0) throw std::domain_error("Quad division: degenerate norm");
  *this *= conj3;
  *this *= conj2;
  Rat inv = Rat(1) / den;
  a_ *= inv;
  b_ *= inv;
  c_ *= inv;
  d_ *= inv;
  return *this;
}

std::optional<Quad> Quad::sqrt_int(long n) {
  if (n < 0) return std::nullopt;
  if (n == 0) return Quad(0);
  long s = 1;
  long rest = n;
  for (long f = 2; f * f <= rest;) {
    if (rest % (f * f) == 0) {
      rest /= f * f;
      s *= f;
    } else {
      ++f;
    }
  }
  switch (rest) {
    case 1:
      return Quad(Rat(s));
    case 2:
      return Quad(Rat(0), Rat(s), Rat(0), Rat(0));
    case 3:
      return Quad(Rat(0), Rat(0), Rat(s), Rat(0));
    case 6:
      return Quad(Rat(0), Rat(0), Rat(0), Rat(s));
    default:
      return std::nullopt;
  }
}

Quad Quad::sqrt_int_checked(long n) {
  auto q = sqrt_int(n);
  if (!q) {
    throw std::domain_error("sqrt(" + std::to_string(n) +
                            ") is not representable in Q(sqrt2, sqrt3)");
  }
  return *q;
}

}  // namespace greedylb
