#include "greedylb/params.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace greedylb {

namespace {

const std::vector<std::pair<ParamKind, const char*>>& kind_table() {
  static const std::vector<std::pair<ParamKind, const char*>> t = {
      {ParamKind::g, "g"},
      {ParamKind::g_c, "g_c"},
      {ParamKind::k_uncond, "k_uncond"},
      {ParamKind::mu, "mu"},
      {ParamKind::mu_d, "mu_d"},
      {ParamKind::mu_t, "mu_t"},
      {ParamKind::mu_t_d, "mu_t_d"},
      {ParamKind::lambda, "lambda"},
      {ParamKind::lambda_c, "lambda_c"},
      {ParamKind::lambda_d, "lambda_d"},
      {ParamKind::nu, "nu"},
      {ParamKind::nu_d, "nu_d"},
      {ParamKind::omega, "omega"},
      {ParamKind::r_trunc, "r_trunc"},
      {ParamKind::L, "L"},
      {ParamKind::L_a, "L_a"},
      {ParamKind::L_s, "L_s"},
      {ParamKind::L_ch, "L_ch"},
      {ParamKind::D_cons, "D_cons"},
      {ParamKind::K_basis, "K_basis"},
  };
  return t;
}

}  // namespace

std::string param_name(ParamKind k) {
  for (const auto& [kk, nn] : kind_table())
    if (kk == k) return nn;
  return "?";
}

std::optional<ParamKind> param_from_name(std::string_view name) {
  for (const auto& [kk, nn] : kind_table())
    if (name == nn) return kk;
  return std::nullopt;
}

const std::vector<ParamKind>& all_param_kinds() {
  static const std::vector<ParamKind> ks = [] {
    std::vector<ParamKind> v;
    for (const auto& [kk, nn] : kind_table()) v.push_back(kk);
    return v;
  }();
  return ks;
}

std::string WitnessInstance::str() const {
  std::ostringstream os;
  os << param_name(kind) << "|m=" << m << "|f=" << f.str() << "|A=" << A.str()
     << "|B=" << B.str();
  if (!eps.domain().empty()) os << "|eps=" << eps.str();
  if (!eta.domain().empty()) os << "|eta=" << eta.str();
  if (k) os << "|k=" << k;
  if (t != 0) os << "|t=" << rat_str(t);
  return os.str();
}

SearchConfig SearchConfig::from_json_text(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SearchConfig c;
  if (j.contains("pool_size")) c.pool_size = j["pool_size"].get<int>();
  if (j.contains("random_seed")) c.random_seed = j["random_seed"].get<std::uint64_t>();
  if (j.contains("window")) c.window = j["window"].get<int>();
  if (j.contains("grid")) {
    c.grid.clear();
    for (const auto& g : j["grid"]) {
      if (g.is_string()) {
        auto r = rat_parse(g.get<std::string>());
        if (!r) throw std::invalid_argument("config: bad grid entry");
        c.grid.push_back(*r);
      } else {
        c.grid.push_back(rat_from_double(g.get<double>()));
      }
    }
  }
  if (j.contains("m_range")) {
    c.m_lo = j["m_range"].at(0).get<int>();
    c.m_hi = j["m_range"].at(1).get<int>();
  }
  if (j.contains("budget")) c.budget = j["budget"].get<std::uint64_t>();
  if (j.contains("omega_le")) c.omega_le = j["omega_le"].get<bool>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  return c;
}

std::string SearchConfig::grid_str() const {
  std::ostringstream os;
  os << '{';
  auto g = grid;
  std::sort(g.begin(), g.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) os << ',';
    os << rat_str(g[i]);
  }
  os << '}';
  return os.str();
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

namespace {

bool fail(std::string* why, const char* msg) {
  if (why) *why = msg;
  return false;
}

Rat max_modulus(const CoeffVector& f) {
  Rat m = 0;
  for (const auto& [n, a] : f.entries()) m = std::max(m, rat_abs(a));
  return m;
}

Rat min_modulus_on(const CoeffVector& f, const IndexSet& B) {
  Rat m = 0;
  bool first = true;
  for (Index n : B) {
    Rat v = rat_abs(f.at(n));
    if (first || v < m) m = v;
    first = false;
  }
  return m;
}

bool signs_match(const SignPattern& sp, const IndexSet& A) { return sp.domain() == A; }

}  // namespace

bool admissible(const SpaceSpec& sp, const WitnessInstance& inst, std::string* why) {
  (void)sp;
  const int m = inst.m;
  if (m < 1) return fail(why, "m must be >= 1");
  const auto sz = [&](const IndexSet& s) { return static_cast<int>(s.size()); };
  switch (inst.kind) {
    case ParamKind::g:
    case ParamKind::g_c:
    case ParamKind::L:
    case ParamKind::L_a:
    case ParamKind::L_s:
      if (sz(inst.A) > m) return fail(why, "|A| must be <= m");
      if (!is_greedy_set(inst.f, inst.A)) return fail(why, "A is not a greedy set of f");
      return true;
    case ParamKind::L_ch:
      if (sz(inst.A) != m) return fail(why, "L_ch needs a greedy set of order exactly m");
      if (!is_greedy_set(inst.f, inst.A)) return fail(why, "A is not a greedy set of f");
      return true;
    case ParamKind::k_uncond:
      return sz(inst.A) <= m || fail(why, "|A| must be <= m");
    case ParamKind::mu:
    case ParamKind::mu_t:
      if (sz(inst.A) != sz(inst.B)) return fail(why, "|A| must equal |B|");
      if (sz(inst.A) > m) return fail(why, "|A| must be <= m");
      return true;
    case ParamKind::mu_d:
    case ParamKind::mu_t_d:
      if (sz(inst.A) != sz(inst.B)) return fail(why, "|A| must equal |B|");
      if (sz(inst.A) > m) return fail(why, "|A| must be <= m");
      if (!inst.A.disjoint_with(inst.B)) return fail(why, "A and B must be disjoint");
      return true;
    case ParamKind::lambda:
    case ParamKind::lambda_d:
      if (sz(inst.A) != sz(inst.B)) return fail(why, "|A| must equal |B|");
      if (sz(inst.B) > m) return fail(why, "|B| must be <= m");
      if (!is_greedy_set(inst.f, inst.B)) return fail(why, "B is not a greedy set of f");
      if (!signs_match(inst.eps, inst.A)) return fail(why, "eps must live on A");
      if (inst.kind == ParamKind::lambda_d && !inst.A.disjoint_with(support(inst.f)))
        return fail(why, "A must avoid supp(f)");
      return true;
    case ParamKind::lambda_c:
      if (!inst.A.empty() && inst.A.max() > m) return fail(why, "A must sit inside [1, m]");
      if (!inst.A.entirely_below(support(inst.f))) return fail(why, "need A < supp(f)");
      if (sz(inst.A) > sz(inst.B) || sz(inst.B) > m)
        return fail(why, "need |A| <= |B| <= m");
      if (!is_greedy_set(inst.f, inst.B)) return fail(why, "B is not a greedy set of f");
      if (!signs_match(inst.eps, inst.A)) return fail(why, "eps must live on A");
      return true;
    case ParamKind::nu:
    case ParamKind::nu_d:
      if (sz(inst.A) != sz(inst.B)) return fail(why, "|A| must equal |B|");
      if (sz(inst.A) > m) return fail(why, "|A| must be <= m");
      if (max_modulus(inst.f) > 1) return fail(why, "need max |x_n*(f)| <= 1");
      if (!support(inst.f).disjoint_with(inst.A.set_union(inst.B)))
        return fail(why, "supp(f) must avoid A and B");
      if (!signs_match(inst.eps, inst.A) || !signs_match(inst.eta, inst.B))
        return fail(why, "sign patterns must live on A and B");
      if (inst.kind == ParamKind::nu_d && !inst.A.disjoint_with(inst.B))
        return fail(why, "A and B must be disjoint");
      return true;
    case ParamKind::omega: {
      if (sz(inst.A) > sz(inst.B) || sz(inst.B) > m)
        return fail(why, "need |A| <= |B| <= m");
      if (!inst.A.empty() && inst.A.max() >= m)
        return fail(why, "need A < m (strict reading; see omega_le)");
      IndexSet rest = support(inst.f).set_union(inst.B);
      if (!inst.A.entirely_below(rest)) return fail(why, "need A < supp(f) union B");
      if (!support(inst.f).disjoint_with(inst.B)) return fail(why, "supp(f) must avoid B");
      if (rat_abs(inst.t) < max_modulus(inst.f)) return fail(why, "need |t| >= max |x_n*(f)|");
      if (!signs_match(inst.eps, inst.A) || !signs_match(inst.eta, inst.B))
        return fail(why, "sign patterns must live on A and B");
      return true;
    }
    case ParamKind::r_trunc: {
      if (sz(inst.A) > m) return fail(why, "|A| must be <= m");
      if (!is_greedy_set(inst.f, inst.A)) return fail(why, "A is not a greedy set of f");
      if (!signs_match(inst.eps, inst.A)) return fail(why, "eps must live on A");
      for (Index n : inst.A) {
        if (inst.eps.at(n) != coeff_sign(inst.f.at(n)))
          return fail(why, "eps must equal the sign pattern of f on A");
      }
      return true;
    }
    case ParamKind::D_cons:
      if (sz(inst.A) > sz(inst.B) || sz(inst.B) > m)
        return fail(why, "need |A| <= |B| <= m");
      if (!inst.A.entirely_below(inst.B)) return fail(why, "need A < B");
      return true;
    case ParamKind::K_basis:
      if (inst.k < 1 || inst.k > m) return fail(why, "need 1 <= k <= m");
      return true;
  }
  return fail(why, "unknown kind");
}

/// Variant of the omega reading with "A < m" relaxed to max A <= m.
static bool admissible_with_flag(const SpaceSpec& sp, const WitnessInstance& inst,
                                 bool omega_le, std::string* why) {
  if (inst.kind == ParamKind::omega && omega_le) {
    WitnessInstance relaxed = inst;
    if (!relaxed.A.empty() && relaxed.A.max() == inst.m) {
      // re-run the remaining checks with A shifted out of the strict test
      if (static_cast<int>(inst.A.size()) > static_cast<int>(inst.B.size()) ||
          static_cast<int>(inst.B.size()) > inst.m)
        return fail(why, "need |A| <= |B| <= m");
      IndexSet rest = support(inst.f).set_union(inst.B);
      if (!inst.A.entirely_below(rest)) return fail(why, "need A < supp(f) union B");
      if (!support(inst.f).disjoint_with(inst.B)) return fail(why, "supp(f) must avoid B");
      if (rat_abs(inst.t) < max_modulus(inst.f))
        return fail(why, "need |t| >= max |x_n*(f)|");
      if (!signs_match(inst.eps, inst.A) || !signs_match(inst.eta, inst.B))
        return fail(why, "sign patterns must live on A and B");
      return true;
    }
  }
  return admissible(sp, inst, why);
}

// ---------------------------------------------------------------------------
// Ratio evaluation
// ---------------------------------------------------------------------------

namespace {

struct OpsF64 {
  using Scalar = double;
  static double nrm(const SpaceSpec& sp, const CoeffVector& v) { return norm(sp, v); }
  static double conv(const Rat& r) { return to_double(r); }
  static double cheb(const SpaceSpec& sp, const CoeffVector& f, const IndexSet& A) {
    return chebyshev_sum(sp, f, A, false).residual;
  }
};

struct OpsRat {
  using Scalar = Rat;
  static Rat nrm(const SpaceSpec& sp, const CoeffVector& v) { return norm_exact(sp, v); }
  static Rat conv(const Rat& r) { return r; }
  static Rat cheb(const SpaceSpec& sp, const CoeffVector& f, const IndexSet& A) {
    auto fit = chebyshev_sum(sp, f, A, true);
    return *fit.residual_exact;
  }
};

template <class Ops>
std::vector<typename Ops::Scalar> mterm_table(const SpaceSpec& sp, const CoeffVector& f,
                                              int m, int N);

template <class Ops>
typename Ops::Scalar ratio_generic(const SpaceSpec& sp, const WitnessInstance& inst) {
  using S = typename Ops::Scalar;
  std::string why;
  if (!admissible(sp, inst, &why))
    throw std::invalid_argument("ratio_eval: inadmissible instance: " + why);
  auto quotient = [&](const S& num, const S& den) -> S {
    if (den == S(0)) {
      if (num == S(0)) return S(0);
      throw std::runtime_error("ratio_eval: unbounded witness (zero denominator)");
    }
    return num / den;
  };
  switch (inst.kind) {
    case ParamKind::g:
      return quotient(Ops::nrm(sp, project(inst.f, inst.A)), Ops::nrm(sp, inst.f));
    case ParamKind::g_c:
      return quotient(Ops::nrm(sp, inst.f - project(inst.f, inst.A)), Ops::nrm(sp, inst.f));
    case ParamKind::k_uncond:
      return quotient(Ops::nrm(sp, project(inst.f, inst.A)), Ops::nrm(sp, inst.f));
    case ParamKind::mu:
      return quotient(Ops::nrm(sp, indicator(inst.A)), Ops::nrm(sp, indicator(inst.B)));
    case ParamKind::mu_d:
      return quotient(Ops::nrm(sp, indicator(inst.A)), Ops::nrm(sp, indicator(inst.B)));
    case ParamKind::mu_t:
    case ParamKind::mu_t_d:
      return quotient(Ops::nrm(sp, indicator(inst.A, inst.eps)),
                      Ops::nrm(sp, indicator(inst.B, inst.eta)));
    case ParamKind::lambda:
    case ParamKind::lambda_c:
    case ParamKind::lambda_d: {
      S t = Ops::conv(min_modulus_on(inst.f, inst.B));
      S num = inst.A.empty() ? S(0) : t * Ops::nrm(sp, indicator(inst.A, inst.eps));
      return quotient(num, Ops::nrm(sp, inst.f));
    }
    case ParamKind::nu:
    case ParamKind::nu_d:
      return quotient(Ops::nrm(sp, indicator(inst.A, inst.eps) + inst.f),
                      Ops::nrm(sp, indicator(inst.B, inst.eta) + inst.f));
    case ParamKind::omega: {
      CoeffVector ea = inst.A.empty() ? CoeffVector() : indicator(inst.A, inst.eps);
      CoeffVector eb = inst.B.empty() ? CoeffVector() : indicator(inst.B, inst.eta);
      return quotient(Ops::nrm(sp, inst.f + ea.scaled(inst.t)),
                      Ops::nrm(sp, inst.f + eb.scaled(inst.t)));
    }
    case ParamKind::r_trunc: {
      S t = Ops::conv(min_modulus_on(inst.f, inst.A));
      S num = inst.A.empty() ? S(0) : t * Ops::nrm(sp, indicator(inst.A, inst.eps));
      return quotient(num, Ops::nrm(sp, inst.f));
    }
    case ParamKind::L: {
      int W = std::max({inst.f.max_index(), inst.A.empty() ? 0 : inst.A.max(), inst.m});
      auto table = mterm_table<Ops>(sp, inst.f, static_cast<int>(inst.A.size()), W);
      return quotient(Ops::nrm(sp, inst.f - project(inst.f, inst.A)), table.back());
    }
    case ParamKind::L_a: {
      IndexSet supp = support(inst.f);
      if (supp.size() > 22) throw std::runtime_error("ratio_eval: L_a support too large");
      S best{};
      bool first = true;
      const auto& idx = supp.values();
      const int j = static_cast<int>(inst.A.size());
      for (std::uint32_t bits = 0; bits < (1u << idx.size()); ++bits) {
        if (std::popcount(bits) > j) continue;
        std::vector<Index> sel;
        for (std::size_t i = 0; i < idx.size(); ++i)
          if ((bits >> i) & 1) sel.push_back(idx[i]);
        S v = Ops::nrm(sp, inst.f - project(inst.f, IndexSet(sel)));
        if (first || v < best) best = v;
        first = false;
      }
      return quotient(Ops::nrm(sp, inst.f - project(inst.f, inst.A)), best);
    }
    case ParamKind::L_s: {
      S best{};
      for (int k = 0; k <= static_cast<int>(inst.A.size()); ++k) {
        S v = Ops::nrm(sp, inst.f - initial_projection(inst.f, k));
        if (k == 0 || v < best) best = v;
      }
      return quotient(Ops::nrm(sp, inst.f - project(inst.f, inst.A)), best);
    }
    case ParamKind::L_ch: {
      int W = std::max({inst.f.max_index(), inst.A.empty() ? 0 : inst.A.max(), inst.m});
      auto table = mterm_table<Ops>(sp, inst.f, inst.m, W);
      return quotient(Ops::cheb(sp, inst.f, inst.A), table.back());
    }
    case ParamKind::D_cons:
      return quotient(Ops::nrm(sp, indicator(inst.A)), Ops::nrm(sp, indicator(inst.B)));
    case ParamKind::K_basis:
      return quotient(Ops::nrm(sp, initial_projection(inst.f, inst.k)),
                      Ops::nrm(sp, inst.f));
  }
  throw std::logic_error("ratio_eval: unhandled kind");
}

/// minterm[j] = inf{||f - y|| : |supp(y)| <= j, supp(y) in I_N} for j = 0..m.
template <class Ops>
std::vector<typename Ops::Scalar> mterm_table(const SpaceSpec& sp, const CoeffVector& f,
                                              int m, int N) {
  using S = typename Ops::Scalar;
  std::vector<S> out(m + 1);
  if (sp.kind == SpaceKind::lp_quasi || sp.kind == SpaceKind::c0_sup) {
    // Coordinatewise norms: drop the j largest moduli inside the window.
    std::vector<Rat> in_window, outside;
    for (const auto& [n, a] : f.entries()) {
      (n <= N ? in_window : outside).push_back(rat_abs(a));
    }
    std::sort(in_window.begin(), in_window.end(), std::greater<Rat>());
    if (sp.kind == SpaceKind::c0_sup) {
      Rat out_max = 0;
      for (const Rat& a : outside) out_max = std::max(out_max, a);
      for (int j = 0; j <= m; ++j) {
        Rat s = out_max;
        for (std::size_t i = j; i < in_window.size(); ++i) s = std::max(s, in_window[i]);
        out[j] = Ops::conv(s);
      }
      return out;
    }
    if (sp.p == 1.0) {
      Rat total = 0;
      for (const Rat& a : in_window) total += a;
      for (const Rat& a : outside) total += a;
      Rat removed = 0;
      for (int j = 0; j <= m; ++j) {
        if (j > 0 && j <= static_cast<int>(in_window.size())) removed += in_window[j - 1];
        out[j] = Ops::conv(total - removed);
      }
      return out;
    }
    // p < 1 (double only)
    if constexpr (std::is_same_v<S, double>) {
      double total = 0;
      for (const Rat& a : in_window) total += std::pow(to_double(a), sp.p);
      for (const Rat& a : outside) total += std::pow(to_double(a), sp.p);
      double removed = 0;
      for (int j = 0; j <= m; ++j) {
        if (j > 0 && j <= static_cast<int>(in_window.size()))
          removed += std::pow(to_double(in_window[j - 1]), sp.p);
        out[j] = std::pow(std::max(0.0, total - removed), 1.0 / sp.p);
      }
      return out;
    }
    throw std::logic_error("mterm_table: exact mode with p < 1");
  }
  // General path: enumerate supports in the window, Chebyshev-fit each.
  if (N > 20) throw std::runtime_error("mterm_table: window too large for support enumeration");
  for (int j = 0; j <= m; ++j) out[j] = Ops::nrm(sp, f);
  for (std::uint32_t bits = 1; bits < (1u << N); ++bits) {
    int pc = std::popcount(bits);
    if (pc > m) continue;
    std::vector<Index> sel;
    for (int i = 0; i < N; ++i)
      if ((bits >> i) & 1) sel.push_back(i + 1);
    S r = Ops::cheb(sp, f, IndexSet(sel));
    for (int j = pc; j <= m; ++j)
      if (r < out[j]) out[j] = r;
  }
  return out;
}

}  // namespace

double ratio_eval(const SpaceSpec& sp, const WitnessInstance& inst) {
  return ratio_generic<OpsF64>(sp, inst);
}

Rat ratio_eval_exact(const SpaceSpec& sp, const WitnessInstance& inst) {
  if (!sp.rational_norm())
    throw std::invalid_argument("ratio_eval_exact: space has no rational-norm mode");
  return ratio_generic<OpsRat>(sp, inst);
}

double min_mterm_error(const SpaceSpec& sp, const CoeffVector& f, int m, int N) {
  return mterm_table<OpsF64>(sp, f, m, N).back();
}

Rat min_mterm_error_exact(const SpaceSpec& sp, const CoeffVector& f, int m, int N) {
  if (!sp.rational_norm())
    throw std::invalid_argument("min_mterm_error_exact: space has no rational-norm mode");
  return mterm_table<OpsRat>(sp, f, m, N).back();
}

// ---------------------------------------------------------------------------
// Witness-mode estimation
// ---------------------------------------------------------------------------

namespace {

IndexSet block(Index start, int len) {
  return len <= 0 ? IndexSet{} : IndexSet::interval(start, start + len - 1);
}

/// Fixed geometric ladder of generation orders; estimate(m) uses the ladder
/// restricted to [1, m], so pools nest across m by construction.
std::vector<int> generation_orders(int m) {
  std::vector<int> orders;
  for (int j = 1; j <= std::min(m, 12); ++j) orders.push_back(j);
  static const int ladder[] = {16,  22,  32,  45,   64,   90,   128,  181,  256,
                               362, 512, 724, 1024, 1448, 2048, 2896, 4096, 5792};
  for (int j : ladder) {
    if (j <= m) orders.push_back(j);
  }
  return orders;
}

IndexSet spread(Index start, int len, int stride) {
  std::vector<Index> v;
  for (int i = 0; i < len; ++i) v.push_back(start + i * stride);
  return IndexSet(v);
}

std::vector<SignPattern> sign_family(const IndexSet& A, std::mt19937_64& rng, int extra) {
  std::vector<SignPattern> out;
  out.push_back(SignPattern::all_ones(A));
  if (!A.empty()) {
    out.push_back(SignPattern::alternating(A, 1));
    out.push_back(SignPattern::alternating(A, -1));
    for (int i = 0; i < extra; ++i) {
      std::vector<int> s(A.size());
      for (auto& x : s) x = (rng() & 1) ? 1 : -1;
      out.emplace_back(A, s);
    }
  }
  // dedup
  std::sort(out.begin(), out.end(),
            [](const SignPattern& l, const SignPattern& r) { return l.str() < r.str(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Deterministic family of test vectors for order j. Pools nest in m because
/// estimate() unions the families over a fixed ladder of orders.
std::vector<CoeffVector> vector_family(int j, std::mt19937_64& rng, int randoms) {
  std::vector<CoeffVector> out;
  const int w = std::max(2 * j, 4);
  out.push_back(indicator(block(1, j)));
  out.push_back(indicator(block(1, 2 * j), SignPattern::alternating(block(1, 2 * j), -1)));
  out.push_back(indicator(block(1, 2 * j)));
  out.push_back(indicator(spread(2, j, 2)));  // even positions
  {  // geometric decay profiles
    for (auto rho : {Rat(1, 2), Rat(9, 10)}) {
      std::vector<std::pair<Index, Rat>> e;
      Rat v = 1;
      for (Index n = 1; n <= std::min(w + 2, 24); ++n) {
        v *= rho;
        e.emplace_back(n, v);
      }
      out.push_back(CoeffVector::from_entries(std::move(e)));
    }
  }
  for (int i = 0; i < randoms; ++i) {
    std::vector<std::pair<Index, Rat>> e;
    static const Rat mags[] = {Rat(1), Rat(1), Rat(1, 2), Rat(1, 4), Rat(2), Rat(3)};
    for (Index n = 1; n <= w; ++n) {
      if (rng() % 3 == 0) continue;
      Rat mag = mags[rng() % 6];
      e.emplace_back(n, (rng() & 1) ? mag : Rat(-mag));
    }
    auto v = CoeffVector::from_entries(std::move(e));
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<IndexSet> greedy_pool(const CoeffVector& f, int j, int cap = 24) {
  std::vector<IndexSet> sets;
  try {
    sets = greedy_sets(f, j, std::max<Index>(f.max_index(), j), 4096);
  } catch (const std::exception&) {
    sets = {canonical_greedy_set(f, j).set};
  }
  if (static_cast<int>(sets.size()) > cap) sets.resize(cap);
  return sets;
}

}  // namespace

ParamEstimate estimate(const SpaceSpec& sp, ParamKind kind, int m, const SearchConfig& cfg) {
  ParamEstimate est;
  est.kind = kind;
  est.m = m;
  est.mode = ParamEstimate::Mode::witness_lower_bound;
  if (m < 1) return est;  // a_0 = 0 by convention
  const bool exact = sp.rational_norm();

  double best = -1.0;
  Rat best_exact = 0;
  WitnessInstance best_w;
  auto offer = [&](WitnessInstance inst) {
    inst.m = m;
    std::string why;
    if (!admissible_with_flag(sp, inst, cfg.omega_le, &why)) return;
    double v;
    Rat ve = 0;
    try {
      if (exact) {
        ve = ratio_eval_exact(sp, inst);
        v = to_double(ve);
      } else {
        v = ratio_eval(sp, inst);
      }
    } catch (const std::runtime_error&) {
      return;  // unbounded or budget-limited instances are skipped in search
    }
    bool take = v > best;
    if (!take && v == best && best >= 0) take = inst.str() < best_w.str();
    if (exact && best >= 0) {
      take = ve > best_exact || (ve == best_exact && inst.str() < best_w.str());
    }
    if (best < 0) take = true;
    if (take) {
      best = v;
      best_exact = ve;
      best_w = std::move(inst);
    }
  };

  for (int j = 1; j <= m; ++j) {
    std::mt19937_64 rng(cfg.random_seed * 1000003u + static_cast<unsigned>(kind) * 131u +
                        static_cast<unsigned>(j));
    int randoms = std::max(4, cfg.pool_size / std::max(1, cfg.m_hi));
    auto vectors = vector_family(sp, j, rng, randoms);

    switch (kind) {
      case ParamKind::g:
      case ParamKind::g_c:
      case ParamKind::L:
      case ParamKind::L_a:
      case ParamKind::L_s:
        for (const auto& f : vectors) {
          for (int jj = std::max(1, j - 1); jj <= j; ++jj) {
            for (auto& A : greedy_pool(f, jj)) {
              WitnessInstance w;
              w.kind = kind;
              w.f = f;
              w.A = A;
              offer(std::move(w));
            }
          }
        }
        break;
      case ParamKind::L_ch:
        if (j == m) {
          for (const auto& f : vectors) {
            for (auto& A : greedy_pool(f, m)) {
              WitnessInstance w;
              w.kind = kind;
              w.f = f;
              w.A = A;
              offer(std::move(w));
            }
          }
        }
        break;
      case ParamKind::k_uncond:
        for (const auto& f : vectors) {
          IndexSet supp = support(f);
          const auto& idx = supp.values();
          if (idx.size() <= 14) {
            for (std::uint32_t bits = 1; bits < (1u << idx.size()); ++bits) {
              if (std::popcount(bits) > j) continue;
              std::vector<Index> sel;
              for (std::size_t i = 0; i < idx.size(); ++i)
                if ((bits >> i) & 1) sel.push_back(idx[i]);
              WitnessInstance w;
              w.kind = kind;
              w.f = f;
              w.A = IndexSet(sel);
              offer(std::move(w));
            }
          }
        }
        break;
      case ParamKind::mu:
      case ParamKind::mu_d:
      case ParamKind::mu_t:
      case ParamKind::mu_t_d: {
        std::vector<IndexSet> sets = {block(1, j), block(j + 1, j), block(2 * j + 1, j),
                                      spread(1, j, 2), spread(2, j, 2)};
        if (sp.constructed() && j == m) {
          const long n1 = sp.scales.front().n;
          if (static_cast<long>(j) == 2 * n1 && sp.kind == SpaceKind::prop5_space) {
            sets.push_back(block(n1 + 1, static_cast<int>(n1 / 2))
                               .set_union(block(2 * n1 + 1, static_cast<int>(3 * n1 / 2))));
            sets.push_back(block(1, static_cast<int>(2 * n1)));
          }
        }
        for (const auto& A : sets) {
          for (const auto& B : sets) {
            if (A.size() != B.size()) continue;
            bool want_disjoint =
                kind == ParamKind::mu_d || kind == ParamKind::mu_t_d;
            if (want_disjoint && !A.disjoint_with(B)) continue;
            if (kind == ParamKind::mu || kind == ParamKind::mu_d) {
              WitnessInstance w;
              w.kind = kind;
              w.A = A;
              w.B = B;
              offer(std::move(w));
            } else {
              for (const auto& ea : sign_family(A, rng, 1)) {
                for (const auto& eb : sign_family(B, rng, 1)) {
                  WitnessInstance w;
                  w.kind = kind;
                  w.A = A;
                  w.B = B;
                  w.eps = ea;
                  w.eta = eb;
                  offer(std::move(w));
                }
              }
            }
          }
        }
        break;
      }
      case ParamKind::lambda:
      case ParamKind::lambda_d:
      case ParamKind::lambda_c:
        for (const auto& f : vectors) {
          for (auto& B : greedy_pool(f, j, 8)) {
            std::vector<IndexSet> asets;
            if (kind == ParamKind::lambda_c) {
              int hi = std::min<Index>(m, support(f).empty() ? m : support(f).min() - 1);
              for (int len = 1; len <= std::min<int>(hi, static_cast<int>(B.size())); ++len)
                asets.push_back(block(hi - len + 1, len));
            } else {
              Index off = f.max_index() + 1;
              asets = {block(off, j), spread(off, j, 2), B};
            }
            for (const auto& A : asets) {
              for (const auto& ea : sign_family(A, rng, 1)) {
                WitnessInstance w;
                w.kind = kind;
                w.f = f;
                w.A = A;
                w.B = B;
                w.eps = ea;
                offer(std::move(w));
              }
            }
          }
        }
        break;
      case ParamKind::nu:
      case ParamKind::nu_d:
        for (const auto& f0 : vectors) {
          Rat mx = max_modulus(f0);
          CoeffVector f = mx > 1 ? f0.scaled(Rat(1) / mx) : f0;  // clamp
          Index off = f.max_index() + 1;
          std::vector<std::pair<IndexSet, IndexSet>> pairs = {
              {block(off, j), block(off + j, j)},
              {spread(off, j, 2), spread(off + 1, j, 2)},
              {block(off, j), block(off, j)}};
          for (auto& [A, B] : pairs) {
            if (kind == ParamKind::nu_d && !A.disjoint_with(B)) continue;
            for (const auto& ea : sign_family(A, rng, 1)) {
              for (const auto& eb : sign_family(B, rng, 1)) {
                WitnessInstance w;
                w.kind = kind;
                w.f = f;
                w.A = A;
                w.B = B;
                w.eps = ea;
                w.eta = eb;
                offer(std::move(w));
              }
            }
          }
        }
        break;
      case ParamKind::omega:
        for (const auto& f0 : vectors) {
          const int max_alen = std::min(j, cfg.omega_le ? m : m - 1);
          for (int alen = 0; alen <= max_alen; ++alen) {
            IndexSet A = block(1, alen);
            // shift f entirely above A
            std::vector<std::pair<Index, Rat>> sh;
            for (const auto& [n, a] : f0.entries()) sh.emplace_back(n + alen, a);
            CoeffVector f = CoeffVector::from_entries(std::move(sh));
            Index off = f.max_index() + 1;
            Rat M = f.is_zero() ? Rat(1) : max_modulus(f);
            for (int blen = std::max(1, alen); blen <= j; ++blen) {
              IndexSet B = block(off, blen);
              for (const auto& ea : sign_family(A, rng, 0)) {
                for (const auto& eb : sign_family(B, rng, 1)) {
                  for (long tm : {1, 2, 10}) {
                    WitnessInstance w;
                    w.kind = kind;
                    w.f = f;
                    w.A = A;
                    w.B = B;
                    w.eps = ea;
                    w.eta = eb;
                    w.t = M * tm;
                    offer(std::move(w));
                  }
                }
              }
            }
          }
        }
        break;
      case ParamKind::r_trunc:
        for (const auto& f : vectors) {
          for (int jj = 1; jj <= j; ++jj) {
            for (auto& A : greedy_pool(f, jj, 8)) {
              std::vector<int> signs;
              for (Index n : A) signs.push_back(coeff_sign(f.at(n)));
              WitnessInstance w;
              w.kind = kind;
              w.f = f;
              w.A = A;
              w.eps = SignPattern(A, signs);
              offer(std::move(w));
            }
          }
        }
        break;
      case ParamKind::D_cons: {
        std::vector<IndexSet> sets = {block(1, j), block(j + 1, j), block(2 * j + 2, j),
                                      spread(1, j, 2)};
        for (const auto& A : sets) {
          for (const auto& B : sets) {
            if (A.size() > B.size() || !A.entirely_below(B)) continue;
            WitnessInstance w;
            w.kind = kind;
            w.A = A;
            w.B = B;
            offer(std::move(w));
          }
        }
        break;
      }
      case ParamKind::K_basis:
        for (const auto& f : vectors) {
          for (int kk = 1; kk <= j; ++kk) {
            WitnessInstance w;
            w.kind = kind;
            w.f = f;
            w.k = kk;
            offer(std::move(w));
          }
        }
        break;
    }
  }

  if (best < 0) {
    // Trivial admissible instances always exist; fall back to a singleton.
    WitnessInstance w;
    w.kind = kind;
    w.m = m;
    w.f = indicator(IndexSet{1});
    w.A = IndexSet{1};
    w.B = IndexSet{1};
    best = 0.0;
    best_w = w;
  }
  est.value = best;
  if (exact) est.value_exact = best_exact;
  est.witness = best_w;
  est.window = 0;
  est.grid = "";
  return est;
}

}  // namespace greedylb
