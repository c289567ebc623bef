#include "greedylb/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "greedylb/simplex.hpp"

namespace greedylb {

using nlohmann::json;

std::string kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::lp_quasi: return "lp_quasi";
    case SpaceKind::c0_sup: return "c0_sup";
    case SpaceKind::c0_summing: return "c0_summing";
    case SpaceKind::prop5_space: return "prop5_space";
    case SpaceKind::prop6_space: return "prop6_space";
  }
  return "?";
}

std::optional<SpaceKind> kind_from_name(std::string_view name) {
  if (name == "lp_quasi") return SpaceKind::lp_quasi;
  if (name == "c0_sup") return SpaceKind::c0_sup;
  if (name == "c0_summing") return SpaceKind::c0_summing;
  if (name == "prop5_space") return SpaceKind::prop5_space;
  if (name == "prop6_space") return SpaceKind::prop6_space;
  return std::nullopt;
}

void SpaceSpec::validate() const {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("space: p must lie in (0,1]");
  if (kind != SpaceKind::lp_quasi && p != 1.0)
    throw std::invalid_argument("space: only lp_quasi admits p < 1");
  if (constructed()) {
    if (scales.empty()) throw std::invalid_argument("space: constructed spaces need scales");
    for (std::size_t k = 0; k < scales.size(); ++k) {
      const auto& s = scales[k];
      if (s.n < 2 || s.m < 6)
        throw std::invalid_argument("space: scales need n_k >= 2 and m_k >= 6");
      if (kind == SpaceKind::prop5_space && s.n % 2 != 0)
        throw std::invalid_argument("space: prop5 scales need even n_k");
    }
    if (strict_growth) {
      for (std::size_t k = 0; k < scales.size(); ++k) {
        // prop5: 2 m_k^{4k} < n_k < m_{k+1}/2;  prop6: m_k^{4k} < n_k < m_{k+1}/2.
        Int mk(scales[k].m);
        Int lower = 1;
        for (std::size_t i = 0; i < 4 * (k + 1); ++i) lower *= mk;
        if (kind == SpaceKind::prop5_space) lower *= 2;
        if (!(Int(scales[k].n) > lower))
          throw std::invalid_argument("space: growth condition fails at scale " +
                                      std::to_string(k + 1));
        if (k + 1 < scales.size() && !(2 * scales[k].n < scales[k + 1].m))
          throw std::invalid_argument("space: growth condition n_k < m_{k+1}/2 fails");
      }
    }
  } else if (!scales.empty()) {
    throw std::invalid_argument("space: classical spaces take no scales");
  }
}

SpaceSpec SpaceSpec::lp(double p) {
  SpaceSpec s;
  s.kind = SpaceKind::lp_quasi;
  s.p = p;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::c0() {
  SpaceSpec s;
  s.kind = SpaceKind::c0_sup;
  return s;
}

SpaceSpec SpaceSpec::summing() {
  SpaceSpec s;
  s.kind = SpaceKind::c0_summing;
  return s;
}

SpaceSpec SpaceSpec::prop5(std::vector<ScalePair> scales, bool strict) {
  SpaceSpec s;
  s.kind = SpaceKind::prop5_space;
  s.scales = std::move(scales);
  s.strict_growth = strict;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::prop6(std::vector<ScalePair> scales, bool strict) {
  SpaceSpec s;
  s.kind = SpaceKind::prop6_space;
  s.scales = std::move(scales);
  s.strict_growth = strict;
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::prop5_minimal() { return prop5({{2594, 6}}, true); }
SpaceSpec SpaceSpec::prop6_minimal() { return prop6({{1297, 6}}, true); }

std::string SpaceSpec::name() const {
  switch (kind) {
    case SpaceKind::lp_quasi: {
      std::ostringstream os;
      os << "lp:" << p;
      return os.str();
    }
    case SpaceKind::c0_sup: return "c0";
    case SpaceKind::c0_summing: return "summing";
    default: {
      std::ostringstream os;
      os << (kind == SpaceKind::prop5_space ? "prop5" : "prop6");
      for (const auto& s : scales) os << ":" << s.n << "," << s.m;
      return os.str();
    }
  }
}

SpaceSpec SpaceSpec::from_name(const std::string& name) {
  if (!name.empty() && name[0] == '@') {
    std::ifstream in(name.substr(1));
    if (!in) throw std::invalid_argument("space: cannot open " + name.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
  }
  if (name == "lp1") return lp(1.0);
  if (name == "c0" || name == "c0_sup") return c0();
  if (name == "summing" || name == "c0_summing") return summing();
  if (name == "prop5") return prop5_minimal();
  if (name == "prop6") return prop6_minimal();
  auto colon = name.find(':');
  if (colon != std::string::npos) {
    std::string head = name.substr(0, colon), rest = name.substr(colon + 1);
    if (head == "lp") return lp(std::stod(rest));
    if (head == "prop5" || head == "prop6") {
      std::vector<ScalePair> scales;
      std::stringstream ss(rest);
      std::string tok;
      std::vector<long> nums;
      while (std::getline(ss, tok, ',')) nums.push_back(std::stol(tok));
      if (nums.empty() || nums.size() % 2 != 0)
        throw std::invalid_argument("space: scale list must be n1,m1[,n2,m2...]");
      for (std::size_t i = 0; i < nums.size(); i += 2) scales.push_back({nums[i], nums[i + 1]});
      return head == "prop5" ? prop5(std::move(scales)) : prop6(std::move(scales));
    }
  }
  throw std::invalid_argument("space: unknown name '" + name + "'");
}

SpaceSpec SpaceSpec::from_json_text(const std::string& text) {
  json j = json::parse(text);
  SpaceSpec s;
  auto k = kind_from_name(j.at("kind").get<std::string>());
  if (!k) throw std::invalid_argument("space: unknown kind");
  s.kind = *k;
  if (j.contains("p")) s.p = j["p"].get<double>();
  if (j.contains("scales")) {
    for (const auto& pair : j["scales"]) {
      s.scales.push_back({pair.at(0).get<long>(), pair.at(1).get<long>()});
    }
  }
  if (j.contains("strict_growth")) s.strict_growth = j["strict_growth"].get<bool>();
  s.validate();
  return s;
}

std::string SpaceSpec::to_json_text() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(kind);
  j["p"] = p;
  j["scales"] = json::array();
  for (const auto& s : scales) j["scales"].push_back({s.n, s.m});
  j["strict_growth"] = strict_growth;
  return j.dump();
}

DeltaVariant variant_of(const SpaceSpec& sp) {
  if (sp.kind == SpaceKind::prop5_space) return DeltaVariant::prop5;
  if (sp.kind == SpaceKind::prop6_space) return DeltaVariant::prop6;
  throw std::invalid_argument("space: Delta_k is only defined for constructed spaces");
}

Rat ell1_mass(const CoeffVector& v) {
  Rat s = 0;
  for (const auto& [n, a] : v.entries()) s += rat_abs(a);
  return s;
}

// ---------------------------------------------------------------------------
// D_k
// ---------------------------------------------------------------------------

namespace {

void check_scale(const SpaceSpec& sp, int k) {
  if (!sp.constructed()) throw std::invalid_argument("space: no scales on classical spaces");
  if (k < 1 || k > static_cast<int>(sp.scales.size()))
    throw std::out_of_range("space: scale index out of range");
}

std::vector<Rat> tail_magnitudes_sorted(const CoeffVector& v, long beyond) {
  std::vector<Rat> mags;
  for (const auto& [n, a] : v.entries()) {
    if (n > beyond) mags.push_back(rat_abs(a));
  }
  std::sort(mags.begin(), mags.end(), std::greater<Rat>());
  return mags;
}

}  // namespace

double eval_D(const SpaceSpec& sp, int k, const CoeffVector& v) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  auto mags = tail_magnitudes_sorted(v, 2 * n);
  double best = 0.0, prefix = 0.0;
  const long rmax = std::min<long>(n, static_cast<long>(mags.size()));
  for (long r = 1; r <= rmax; ++r) {
    prefix += to_double(mags[r - 1]);
    best = std::max(best, prefix / std::sqrt(static_cast<double>(r)));
  }
  return best / static_cast<double>(m);
}

Quad eval_D_exact(const SpaceSpec& sp, int k, const CoeffVector& v) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  auto mags = tail_magnitudes_sorted(v, 2 * n);
  Quad best(0);
  Rat prefix = 0;
  const long rmax = std::min<long>(n, static_cast<long>(mags.size()));
  for (long r = 1; r <= rmax; ++r) {
    prefix += mags[r - 1];
    Quad cand = Quad(prefix) / Quad::sqrt_int_checked(r);
    if (cand > best) best = cand;
  }
  return best / Quad(Rat(m));
}

// ---------------------------------------------------------------------------
// Q_k: LP path
// ---------------------------------------------------------------------------

namespace {

/// Builds the sign-split budget LP for sup_{delta in Delta_k} <a, delta>.
/// Variables: p_j, q_j (j < 2n), u_r, v_{jr} (j < n), all >= 0.
/// delta_j = p_j - q_j; the majorization family collapses to the n budget rows
///   r u_r + sum_j v_{jr} <= sqrt(r),  v_{jr} >= p_j + q_j - u_r.
template <class T>
LinearProgram<T> build_q_lp(const std::vector<T>& a, long n, DeltaVariant variant,
                            const std::function<T(long)>& sqrt_of) {
  LinearProgram<T> lp;
  const long two_n = 2 * n;
  lp.num_vars = static_cast<int>(2 * two_n + n + n * n);
  lp.objective.assign(lp.num_vars, T(0));
  auto p_var = [&](long j) { return static_cast<int>(j); };
  auto q_var = [&](long j) { return static_cast<int>(two_n + j); };
  auto u_var = [&](long r) { return static_cast<int>(2 * two_n + r); };          // r in [0, n)
  auto v_var = [&](long j, long r) { return static_cast<int>(2 * two_n + n + j * n + r); };

  for (long j = 0; j < two_n; ++j) {
    lp.objective[p_var(j)] = a[j];
    lp.objective[q_var(j)] = -a[j];
  }
  // |delta_j| <= 1
  for (long j = 0; j < two_n; ++j) {
    std::vector<T> row(lp.num_vars, T(0));
    row[p_var(j)] = T(1);
    row[q_var(j)] = T(1);
    lp.add_row(std::move(row), Rel::Le, T(1));
  }
  // v_{jr} >= p_j + q_j - u_r
  for (long j = 0; j < n; ++j) {
    for (long r = 0; r < n; ++r) {
      std::vector<T> row(lp.num_vars, T(0));
      row[p_var(j)] = T(1);
      row[q_var(j)] = T(1);
      row[u_var(r)] = T(-1);
      row[v_var(j, r)] = T(-1);
      lp.add_row(std::move(row), Rel::Le, T(0));
    }
  }
  // r u_r + sum_j v_{jr} <= sqrt(r)
  for (long r = 0; r < n; ++r) {
    std::vector<T> row(lp.num_vars, T(0));
    row[u_var(r)] = T(static_cast<int>(r + 1));
    for (long j = 0; j < n; ++j) row[v_var(j, r)] = T(1);
    lp.add_row(std::move(row), Rel::Le, sqrt_of(r + 1));
  }
  // coupling
  std::vector<T> cpl(lp.num_vars, T(0));
  for (long j = 0; j < two_n; ++j) {
    T g = (variant == DeltaVariant::prop6 && j >= n) ? T(1) / sqrt_of(n) : T(1);
    cpl[p_var(j)] = g;
    cpl[q_var(j)] = -g;
  }
  lp.add_row(cpl, Rel::Le, T(1));
  for (auto& c : cpl) c = -c;
  lp.add_row(std::move(cpl), Rel::Le, T(1));
  return lp;
}

std::vector<double> window_coeffs_f64(const CoeffVector& v, long two_n) {
  std::vector<double> a(two_n, 0.0);
  for (const auto& [n, c] : v.entries()) {
    if (n <= two_n) a[n - 1] = to_double(c);
  }
  return a;
}

}  // namespace

double eval_Q_lp(const SpaceSpec& sp, int k, const CoeffVector& v,
                 std::vector<double>* delta_out) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  auto a = window_coeffs_f64(v, 2 * n);
  auto lp = build_q_lp<double>(a, n, variant_of(sp),
                               [](long r) { return std::sqrt(static_cast<double>(r)); });
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw std::runtime_error("eval_Q_lp: solver did not reach an optimum");
  if (delta_out) {
    delta_out->assign(2 * n, 0.0);
    for (long j = 0; j < 2 * n; ++j) (*delta_out)[j] = res.x[j] - res.x[2 * n + j];
  }
  return res.objective / static_cast<double>(m);
}

Quad eval_Q_lp_exact(const SpaceSpec& sp, int k, const CoeffVector& v,
                     std::vector<Quad>* delta_out) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  std::vector<Quad> a(2 * n, Quad(0));
  for (const auto& [idx, c] : v.entries()) {
    if (idx <= 2 * n) a[idx - 1] = Quad(c);
  }
  auto lp = build_q_lp<Quad>(a, n, variant_of(sp),
                             [](long r) { return Quad::sqrt_int_checked(r); });
  auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw std::runtime_error("eval_Q_lp_exact: solver did not reach an optimum");
  if (delta_out) {
    delta_out->assign(2 * n, Quad(0));
    for (long j = 0; j < 2 * n; ++j) (*delta_out)[j] = res.x[j] - res.x[2 * n + j];
  }
  return res.objective / Quad(Rat(m));
}

// ---------------------------------------------------------------------------
// Q_k: parametric dual path
//
// Dualizing the coupling row with multiplier nu gives
//   m_k Q_k = min_nu  h(nu) + |nu|,
//   h(nu) = OWA_w(|a_j - nu|; j <= n_k) + sum_{j > n_k} |a_j - nu g_j|,
// where OWA_w is the ordered weighted sum with weights w_r = sqrt(r)-sqrt(r-1)
// (the support function of the majorization polytope) and g_j is the coupling
// coefficient of the upper block (1 for prop5, 1/sqrt(n_k) for prop6).
// h is convex piecewise linear; the minimum sits at a kink.
// ---------------------------------------------------------------------------

namespace {

double owa_majorization(std::vector<double>& y, const std::vector<double>& w) {
  std::sort(y.begin(), y.end(), std::greater<double>());
  double s = 0.0;
  for (std::size_t r = 0; r < y.size(); ++r) s += w[r] * y[r];
  return s;
}

}  // namespace

double eval_Q_dual(const SpaceSpec& sp, int k, const CoeffVector& v) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  const bool p6 = variant_of(sp) == DeltaVariant::prop6;
  auto a = window_coeffs_f64(v, 2 * n);
  const double g2 = p6 ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;

  std::vector<double> w(n);
  for (long r = 1; r <= n; ++r)
    w[r - 1] = std::sqrt(static_cast<double>(r)) - std::sqrt(static_cast<double>(r - 1));

  std::vector<double> y(n);
  auto phi = [&](double nu) {
    for (long j = 0; j < n; ++j) y[j] = std::abs(a[j] - nu);
    double s = owa_majorization(y, w);
    for (long j = n; j < 2 * n; ++j) s += std::abs(a[j] - nu * g2);
    return s + std::abs(nu);
  };

  double M = 1.0;
  for (long j = 0; j < n; ++j) M = std::max(M, std::abs(a[j]));
  for (long j = n; j < 2 * n; ++j) M = std::max(M, std::abs(a[j]) / g2);
  double lo = -M - 1.0, hi = M + 1.0;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = phi(x1), f2 = phi(x2);
  for (int it = 0; it < 140; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = phi(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = phi(x2);
    }
  }
  double best = std::min({f1, f2, phi(0.0)});
  return best / static_cast<double>(m);
}

Quad eval_Q_dual_exact(const SpaceSpec& sp, int k, const CoeffVector& v) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  const bool p6 = variant_of(sp) == DeltaVariant::prop6;
  std::vector<Quad> a(2 * n, Quad(0));
  for (const auto& [idx, c] : v.entries()) {
    if (idx <= 2 * n) a[idx - 1] = Quad(c);
  }
  const Quad sqrt_n = Quad::sqrt_int_checked(n);
  const Quad g2 = p6 ? Quad(1) / sqrt_n : Quad(1);

  std::vector<Quad> w;
  for (long r = 1; r <= n; ++r)
    w.push_back(Quad::sqrt_int_checked(r) - Quad::sqrt_int_checked(r - 1));

  auto phi = [&](const Quad& nu) {
    std::vector<Quad> y;
    y.reserve(n);
    for (long j = 0; j < n; ++j) y.push_back(abs(a[j] - nu));
    std::sort(y.begin(), y.end(), [](const Quad& l, const Quad& r) { return r < l; });
    Quad s(0);
    for (long r = 0; r < n; ++r) s += w[r] * y[r];
    for (long j = n; j < 2 * n; ++j) s += abs(a[j] - nu * g2);
    return s + abs(nu);
  };

  // Complete kink list: coordinate kinks, block-1 order crossings, 0.
  std::vector<Quad> cand;
  cand.push_back(Quad(0));
  for (long j = 0; j < n; ++j) cand.push_back(a[j]);
  for (long j = n; j < 2 * n; ++j) cand.push_back(p6 ? a[j] * sqrt_n : a[j]);
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) cand.push_back((a[i] + a[j]) / Quad(2));

  Quad best = phi(cand.front());
  for (std::size_t i = 1; i < cand.size(); ++i) {
    Quad val = phi(cand[i]);
    if (val < best) best = val;
  }
  return best / Quad(Rat(m));
}

double eval_Q(const SpaceSpec& sp, int k, const CoeffVector& v) {
  return eval_Q_dual(sp, k, v);
}

double eval_Q(const SpaceSpec& sp, int k, const CoeffVector& v, DeltaVariant variant) {
  if (variant != variant_of(sp))
    throw std::invalid_argument("eval_Q: variant does not match the space");
  return eval_Q_dual(sp, k, v);
}

Quad eval_Q_exact(const SpaceSpec& sp, int k, const CoeffVector& v) {
  return eval_Q_lp_exact(sp, k, v);
}

// ---------------------------------------------------------------------------
// Q_k: explicit witness bounds from the proofs' delta choices
// ---------------------------------------------------------------------------

double QWitnessBound::value() const {
  return to_double(value_times_sqrt) / std::sqrt(static_cast<double>(sqrt_arg));
}

std::optional<QWitnessBound> eval_Q_witness(const SpaceSpec& sp, int k, const CoeffVector& v) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
  bool lower_empty = true;
  long upper_count = 0;
  Rat upper_mass = 0, lower_mass = 0;
  for (const auto& [idx, a] : v.entries()) {
    if (idx <= n) {
      lower_empty = false;
      lower_mass += rat_abs(a);
    } else if (idx <= 2 * n) {
      ++upper_count;
      upper_mass += rat_abs(a);
    }
  }
  const bool p5 = variant_of(sp) == DeltaVariant::prop5;
  if (lower_empty) {
    // Pairing deltas give Q_k = upper ell_1 mass / m_k; prop5 additionally
    // needs room in the upper block for the compensating set.
    if (!p5 || 2 * upper_count <= n) {
      QWitnessBound b;
      b.value_times_sqrt = upper_mass / m;
      b.sqrt_arg = 1;
      b.exact = true;
      return b;
    }
    return std::nullopt;
  }
  if (upper_count == 0) {
    // Entries beyond 2 n_k never enter the objective; the pairing only needs
    // the window part to sit inside I_{n_k}.
    QWitnessBound b;
    b.value_times_sqrt = lower_mass / m;
    b.sqrt_arg = n;
    b.exact = false;
    return b;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Delta_k feasibility
// ---------------------------------------------------------------------------

bool delta_feasible(const std::vector<double>& delta, const SpaceSpec& sp, int k, double tol) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n;
  if (static_cast<long>(delta.size()) != 2 * n)
    throw std::invalid_argument("delta_feasible: wrong length");
  for (double d : delta) {
    if (std::abs(d) > 1.0 + tol) return false;
  }
  double coupled = 0.0;
  if (variant_of(sp) == DeltaVariant::prop5) {
    for (double d : delta) coupled += d;
  } else {
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (long j = 0; j < n; ++j) coupled += delta[j] + s * delta[j + n];
  }
  if (std::abs(coupled) > 1.0 + tol) return false;
  std::vector<double> mags(delta.begin(), delta.begin() + n);
  for (double& d : mags) d = std::abs(d);
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  double prefix = 0.0;
  for (long r = 1; r <= n; ++r) {
    prefix += mags[r - 1];
    if (prefix > std::sqrt(static_cast<double>(r)) + tol) return false;
  }
  return true;
}

bool delta_feasible_exact(const std::vector<Quad>& delta, const SpaceSpec& sp, int k) {
  check_scale(sp, k);
  const long n = sp.scales[k - 1].n;
  if (static_cast<long>(delta.size()) != 2 * n)
    throw std::invalid_argument("delta_feasible_exact: wrong length");
  const Quad one(1);
  for (const Quad& d : delta) {
    if (abs(d) > one) return false;
  }
  Quad coupled(0);
  if (variant_of(sp) == DeltaVariant::prop5) {
    for (const Quad& d : delta) coupled += d;
  } else {
    const Quad s = Quad(1) / Quad::sqrt_int_checked(n);
    for (long j = 0; j < n; ++j) coupled += delta[j] + s * delta[j + n];
  }
  if (abs(coupled) > one) return false;
  std::vector<Quad> mags(delta.begin(), delta.begin() + n);
  for (Quad& d : mags) d = abs(d);
  std::sort(mags.begin(), mags.end(), [](const Quad& l, const Quad& r) { return r < l; });
  Quad prefix(0);
  for (long r = 1; r <= n; ++r) {
    prefix += mags[r - 1];
    if (prefix > Quad::sqrt_int_checked(r)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

namespace {

template <class S, class Conv>
S summing_norm(const CoeffVector& v, Conv conv) {
  // Coefficient norm of the summing basis: max_j |sum_{n >= j} a_n|; the tail
  // only changes at support indices, so suffix sums at support points suffice.
  S best(0), tail(0);
  const auto& ent = v.entries();
  for (auto it = ent.rbegin(); it != ent.rend(); ++it) {
    tail += conv(it->second);
    S mag = tail < S(0) ? S(-tail) : tail;
    if (mag > best) best = mag;
  }
  return best;
}

}  // namespace

double norm(const SpaceSpec& sp, const CoeffVector& v) {
  auto conv = [](const Rat& r) { return to_double(r); };
  switch (sp.kind) {
    case SpaceKind::lp_quasi: {
      if (sp.p == 1.0) {
        double s = 0.0;
        for (const auto& [n, a] : v.entries()) s += std::abs(conv(a));
        return s;
      }
      double s = 0.0;
      for (const auto& [n, a] : v.entries()) s += std::pow(std::abs(conv(a)), sp.p);
      return std::pow(s, 1.0 / sp.p);
    }
    case SpaceKind::c0_sup: {
      double s = 0.0;
      for (const auto& [n, a] : v.entries()) s = std::max(s, std::abs(conv(a)));
      return s;
    }
    case SpaceKind::c0_summing:
      return summing_norm<double>(v, conv);
    default: {
      double best = 0.0;
      for (const auto& [n, a] : v.entries()) best = std::max(best, std::abs(conv(a)));
      for (int k = 1; k <= static_cast<int>(sp.scales.size()); ++k) {
        best = std::max(best, eval_D(sp, k, v));
        best = std::max(best, eval_Q(sp, k, v));
      }
      const long nK = sp.scales.back().n;
      best = std::max(best, to_double(ell1_mass(v)) / static_cast<double>(2 * nK + 1));
      return best;
    }
  }
}

Rat norm_exact(const SpaceSpec& sp, const CoeffVector& v) {
  if (!sp.rational_norm())
    throw std::invalid_argument("norm_exact: space has no rational-norm mode");
  switch (sp.kind) {
    case SpaceKind::lp_quasi: {
      Rat s = 0;
      for (const auto& [n, a] : v.entries()) s += rat_abs(a);
      return s;
    }
    case SpaceKind::c0_sup: {
      Rat s = 0;
      for (const auto& [n, a] : v.entries()) s = std::max(s, rat_abs(a));
      return s;
    }
    default:
      return summing_norm<Rat>(v, [](const Rat& r) { return r; });
  }
}

Quad norm_exact_roots(const SpaceSpec& sp, const CoeffVector& v) {
  if (sp.rational_norm()) return Quad(norm_exact(sp, v));
  if (!sp.constructed())
    throw std::invalid_argument("norm_exact_roots: no exact mode for lp_quasi(p<1)");
  Quad best(0);
  for (const auto& [n, a] : v.entries()) {
    Quad mag{rat_abs(a)};
    if (mag > best) best = mag;
  }
  for (int k = 1; k <= static_cast<int>(sp.scales.size()); ++k) {
    Quad d = eval_D_exact(sp, k, v);
    if (d > best) best = d;
    Quad q = eval_Q_lp_exact(sp, k, v);
    if (q > best) best = q;
  }
  const long nK = sp.scales.back().n;
  Quad cap{ell1_mass(v) / Rat(2 * nK + 1)};
  if (cap > best) best = cap;
  return best;
}

// ---------------------------------------------------------------------------
// Windowed dual functional norm
// ---------------------------------------------------------------------------

DualNormEstimate dual_functional_norm(const SpaceSpec& sp, Index n, int N) {
  if (n < 1 || n > N) throw std::invalid_argument("dual_functional_norm: need 1 <= n <= N");
  switch (sp.kind) {
    case SpaceKind::lp_quasi:
    case SpaceKind::c0_sup:
      return {1.0, true};
    case SpaceKind::c0_summing: {
      // maximize a_n over |sum_{i>=j} a_i| <= 1 for j = 1..N; a_i free.
      LinearProgram<Rat> lp;
      lp.num_vars = 2 * N;  // a_i = x_i - x_{N+i}
      lp.objective.assign(lp.num_vars, Rat(0));
      lp.objective[n - 1] = 1;
      lp.objective[N + n - 1] = -1;
      for (int j = 1; j <= N; ++j) {
        std::vector<Rat> row(lp.num_vars, Rat(0));
        for (int i = j; i <= N; ++i) {
          row[i - 1] = 1;
          row[N + i - 1] = -1;
        }
        lp.add_row(row, Rel::Le, Rat(1));
        for (auto& c : row) c = -c;
        lp.add_row(std::move(row), Rel::Le, Rat(1));
      }
      auto res = solve_lp(lp);
      if (res.status != LpStatus::Optimal)
        throw std::runtime_error("dual_functional_norm: LP failed");
      return {to_double(res.objective), true};
    }
    default: {
      // Constructed spaces: deterministic local ratio search; lower bound.
      auto ratio = [&](const CoeffVector& v) {
        double nm = norm(sp, v);
        return nm > 0 ? std::abs(to_double(v.at(n))) / nm : 0.0;
      };
      CoeffVector best_v = indicator(IndexSet{n});
      double best = ratio(best_v);  // = 1, basis normalized
      // Coordinate perturbation ascent over the window.
      std::vector<Rat> steps = {Rat(1), Rat(1, 2), Rat(1, 4), Rat(1, 8)};
      for (int sweep = 0; sweep < 4; ++sweep) {
        for (Index j = 1; j <= N; ++j) {
          for (const Rat& st : steps) {
            for (int sgn : {1, -1}) {
              CoeffVector cand =
                  best_v + indicator(IndexSet{j}).scaled(sgn > 0 ? st : Rat(-st));
              double r = ratio(cand);
              if (r > best + 1e-12) {
                best = r;
                best_v = cand;
              }
            }
          }
        }
      }
      return {best, false};
    }
  }
}

}  // namespace greedylb
