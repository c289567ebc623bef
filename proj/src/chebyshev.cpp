#include "greedylb/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "greedylb/greedy.hpp"
#include "greedylb/simplex.hpp"

namespace greedylb {

Rat LinearFunctional::apply(const CoeffVector& v) const {
  Rat s = 0;
  for (const auto& [n, c] : coeffs) s += c * v.at(n);
  return s;
}

double LinearFunctional::apply_f64(const CoeffVector& v) const {
  double s = 0.0;
  for (const auto& [n, c] : coeffs) s += to_double(c) * to_double(v.at(n));
  return s;
}

CoeffVector ChebyshevFit::fitted() const {
  return CoeffVector::from_entries(coeffs);
}

LinearFunctionalSet polyhedral_functionals(const SpaceSpec& sp, int window) {
  if (window < 1) throw std::invalid_argument("polyhedral_functionals: window must be >= 1");
  LinearFunctionalSet fs;
  fs.window = window;
  fs.space = sp;
  switch (sp.kind) {
    case SpaceKind::c0_sup: {
      for (Index n = 1; n <= window; ++n) fs.fns.push_back({{{n, Rat(1)}}});
      fs.complete = true;
      return fs;
    }
    case SpaceKind::c0_summing: {
      for (Index j = 1; j <= window; ++j) {
        LinearFunctional phi;
        for (Index n = j; n <= window; ++n) phi.coeffs.emplace_back(n, Rat(1));
        fs.fns.push_back(std::move(phi));
      }
      fs.complete = true;
      return fs;
    }
    case SpaceKind::lp_quasi: {
      if (sp.p != 1.0)
        throw std::invalid_argument("polyhedral_functionals: lp_quasi(p<1) is not polyhedral");
      if (window > 16)
        throw std::invalid_argument("polyhedral_functionals: lp1 sign patterns limited to window 16");
      for (std::uint32_t bits = 0; bits < (1u << window); ++bits) {
        LinearFunctional phi;
        for (Index n = 1; n <= window; ++n)
          phi.coeffs.emplace_back(n, Rat((bits >> (n - 1)) & 1 ? 1 : -1));
        fs.fns.push_back(std::move(phi));
      }
      fs.complete = true;
      return fs;
    }
    default: {
      const long two_nK = 2 * sp.scales.back().n;
      if (window < two_nK)
        throw std::invalid_argument("polyhedral_functionals: window must cover 2 n_Kmax");
      for (Index n = 1; n <= window; ++n) fs.fns.push_back({{{n, Rat(1)}}});
      fs.complete = false;  // D_k, Q_k and the tail cap arrive via separation
      return fs;
    }
  }
}

LinearFunctional separating_functional(const SpaceSpec& sp, const CoeffVector& v) {
  if (!sp.constructed())
    throw std::invalid_argument("separating_functional: constructed spaces only");
  double best = 0.0;
  LinearFunctional best_fn;
  // sup-coordinate term
  for (const auto& [n, a] : v.entries()) {
    double mag = std::abs(to_double(a));
    if (mag > best) {
      best = mag;
      best_fn = {{{n, Rat(to_double(a) >= 0 ? 1 : -1)}}};
    }
  }
  for (int k = 1; k <= static_cast<int>(sp.scales.size()); ++k) {
    const long n = sp.scales[k - 1].n, m = sp.scales[k - 1].m;
    // D_k: best prefix of the tail magnitudes
    {
      std::vector<std::pair<double, Index>> tail;
      for (const auto& [idx, a] : v.entries()) {
        if (idx > 2 * n) tail.emplace_back(std::abs(to_double(a)), idx);
      }
      std::sort(tail.begin(), tail.end(), [](const auto& l, const auto& r) {
        return l.first > r.first || (l.first == r.first && l.second < r.second);
      });
      double prefix = 0.0;
      const long rmax = std::min<long>(n, static_cast<long>(tail.size()));
      for (long r = 1; r <= rmax; ++r) {
        prefix += tail[r - 1].first;
        double val = prefix / (std::sqrt(static_cast<double>(r)) * m);
        if (val > best) {
          best = val;
          LinearFunctional phi;
          Rat scale = rat_from_double(1.0 / (std::sqrt(static_cast<double>(r)) * m));
          for (long i = 0; i < r; ++i) {
            Index idx = tail[i].second;
            int sgn = to_double(v.at(idx)) >= 0 ? 1 : -1;
            phi.coeffs.emplace_back(idx, Rat(sgn) * scale);
          }
          std::sort(phi.coeffs.begin(), phi.coeffs.end());
          best_fn = std::move(phi);
        }
      }
    }
    // Q_k via the LP path (needs the maximizing delta)
    if (n > 32)
      throw std::runtime_error("separating_functional: Q_k separation limited to n_k <= 32");
    std::vector<double> delta;
    double q = eval_Q_lp(sp, k, v, &delta);
    if (q > best) {
      best = q;
      LinearFunctional phi;
      for (long j = 0; j < 2 * n; ++j) {
        if (delta[j] != 0.0)
          phi.coeffs.emplace_back(static_cast<Index>(j + 1), rat_from_double(delta[j] / m));
      }
      best_fn = std::move(phi);
    }
  }
  // tail cap
  {
    const long nK = sp.scales.back().n;
    double cap = to_double(ell1_mass(v)) / static_cast<double>(2 * nK + 1);
    if (cap > best) {
      best = cap;
      LinearFunctional phi;
      for (const auto& [idx, a] : v.entries())
        phi.coeffs.emplace_back(idx, Rat(to_double(a) >= 0 ? 1 : -1) / Rat(2 * nK + 1));
      best_fn = std::move(phi);
    }
  }
  return best_fn;
}

namespace {

std::vector<std::pair<Index, Rat>> projection_coeffs(const CoeffVector& f, const IndexSet& A) {
  std::vector<std::pair<Index, Rat>> c;
  for (Index n : A) c.emplace_back(n, f.at(n));
  return c;
}

/// Solve min tau s.t. |phi_i(f) - sum_n c_n phi_i(x_n)| <= tau over the list.
template <class T>
struct MinmaxSolve {
  T tau;
  std::vector<T> c;  // aligned with A order
  bool ok = false;
};

template <class T, class Conv>
MinmaxSolve<T> solve_minmax(const std::vector<LinearFunctional>& fns, const CoeffVector& f,
                            const IndexSet& A, Conv conv) {
  const int na = static_cast<int>(A.size());
  LinearProgram<T> lp;
  lp.num_vars = 1 + 2 * na;  // tau, c^+, c^-
  lp.objective.assign(lp.num_vars, T(0));
  lp.objective[0] = T(-1);  // maximize -tau
  const auto& idx = A.values();
  for (const auto& phi : fns) {
    T b = conv(phi.apply(f));
    std::vector<T> base(lp.num_vars, T(0));
    for (int j = 0; j < na; ++j) {
      T pj = T(0);
      for (const auto& [n, coef] : phi.coeffs) {
        if (n == idx[j]) pj = conv(coef);
      }
      base[1 + j] = pj;
      base[1 + na + j] = -pj;
    }
    // sum c phi - tau <= b
    std::vector<T> r1 = base;
    r1[0] = T(-1);
    lp.add_row(std::move(r1), Rel::Le, b);
    // -sum c phi - tau <= -b
    std::vector<T> r2 = base;
    for (auto& x : r2) x = -x;
    r2[0] = T(-1);
    lp.add_row(std::move(r2), Rel::Le, T(-b));
  }
  auto res = solve_lp(lp);
  MinmaxSolve<T> out;
  if (res.status != LpStatus::Optimal) return out;
  out.ok = true;
  out.tau = -res.objective;
  out.c.resize(na);
  for (int j = 0; j < na; ++j) out.c[j] = res.x[1 + j] - res.x[1 + na + j];
  return out;
}

/// Dykstra projection of the projection coefficients onto the optimal face
/// {c : |phi_i(f - sum c x)| <= tau}. Deterministic; used only in float mode
/// to realize the Euclidean tie-break among minimizers.
std::vector<double> dykstra_tiebreak(const std::vector<LinearFunctional>& fns,
                                     const CoeffVector& f, const IndexSet& A, double tau,
                                     const std::vector<double>& start) {
  const int na = static_cast<int>(A.size());
  const auto& idx = A.values();
  struct Half {
    std::vector<double> a;  // a . c <= b
    double b;
    double norm2;
  };
  std::vector<Half> halves;
  for (const auto& phi : fns) {
    double b = phi.apply_f64(f);
    std::vector<double> a(na, 0.0);
    double n2 = 0.0;
    for (int j = 0; j < na; ++j) {
      for (const auto& [n, coef] : phi.coeffs) {
        if (n == idx[j]) a[j] = to_double(coef);
      }
      n2 += a[j] * a[j];
    }
    if (n2 == 0.0) continue;
    // phi(f) - a.c in [-tau, tau]  <=>  a.c <= phi(f)+tau and -a.c <= tau-phi(f)
    halves.push_back({a, b + tau, n2});
    std::vector<double> neg(a);
    for (auto& x : neg) x = -x;
    halves.push_back({std::move(neg), tau - b, n2});
  }
  std::vector<double> c = start;
  std::vector<std::vector<double>> corr(halves.size(), std::vector<double>(na, 0.0));
  for (int sweep = 0; sweep < 400; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < halves.size(); ++i) {
      std::vector<double> y(na);
      for (int j = 0; j < na; ++j) y[j] = c[j] + corr[i][j];
      double viol = -halves[i].b;
      for (int j = 0; j < na; ++j) viol += halves[i].a[j] * y[j];
      double step = viol > 0.0 ? viol / halves[i].norm2 : 0.0;
      for (int j = 0; j < na; ++j) {
        double nc = y[j] - step * halves[i].a[j];
        corr[i][j] = y[j] - nc;
        change += std::abs(nc - c[j]);
        c[j] = nc;
      }
    }
    if (change < 1e-13) break;
  }
  return c;
}

ChebyshevFit finish_fit(const LinearFunctionalSet& fs, const CoeffVector& f, const IndexSet& A,
                        bool exact, const std::vector<LinearFunctional>& fns) {
  ChebyshevFit fit;
  fit.A = A;
  if (exact) {
    auto sol = solve_minmax<Rat>(fns, f, A, [](const Rat& r) { return r; });
    if (!sol.ok) throw std::runtime_error("minmax_lp: exact solve failed");
    fit.method = ChebyshevFit::Method::lp_exact;
    fit.residual_exact = sol.tau;
    fit.residual = to_double(sol.tau);
    const auto& idx = A.values();
    for (std::size_t j = 0; j < idx.size(); ++j) fit.coeffs.emplace_back(idx[j], sol.c[j]);
    CoeffVector r = f - fit.fitted();
    for (const auto& phi : fns) {
      if (rat_abs(phi.apply(r)) == sol.tau) fit.active.push_back(phi);
    }
    return fit;
  }
  auto sol = solve_minmax<double>(fns, f, A, [](const Rat& r) { return to_double(r); });
  if (!sol.ok) throw std::runtime_error("minmax_lp: solve failed");
  fit.method = ChebyshevFit::Method::lp_exact;
  // Euclidean tie-break: Dykstra projects the projection coefficients onto
  // the optimal face, giving the closest minimizer.
  std::vector<double> start;
  for (Index n : A) start.push_back(to_double(f.at(n)));
  auto c = dykstra_tiebreak(fns, f, A, sol.tau + 1e-12, start);
  const auto& idx = A.values();
  std::vector<std::pair<Index, Rat>> coeffs;
  for (std::size_t j = 0; j < idx.size(); ++j)
    coeffs.emplace_back(idx[j], rat_from_double(c[j]));
  // keep the refinement only if it stays on the face
  double worst = 0.0;
  CoeffVector fitted = CoeffVector::from_entries(coeffs);
  CoeffVector resid = f - fitted;
  for (const auto& phi : fns) worst = std::max(worst, std::abs(phi.apply_f64(resid)));
  if (worst > sol.tau + 1e-9) {
    coeffs.clear();
    for (std::size_t j = 0; j < idx.size(); ++j)
      coeffs.emplace_back(idx[j], rat_from_double(sol.c[j]));
    resid = f - CoeffVector::from_entries(coeffs);
  }
  fit.coeffs = std::move(coeffs);
  fit.residual = sol.tau;
  for (const auto& phi : fns) {
    if (std::abs(std::abs(phi.apply_f64(resid)) - sol.tau) <= 1e-9) fit.active.push_back(phi);
  }
  return fit;
}

}  // namespace

ChebyshevFit minmax_lp(const LinearFunctionalSet& fs, const CoeffVector& f, const IndexSet& A,
                       bool exact) {
  Index needed = std::max(f.max_index(), A.empty() ? 0 : A.max());
  if (fs.window < needed)
    throw std::invalid_argument("minmax_lp: functional window must cover supp(f) and A");
  if (fs.complete) return finish_fit(fs, f, A, exact, fs.fns);

  if (exact)
    throw std::invalid_argument("minmax_lp: exact mode needs a complete functional list");
  // Column generation against the separation oracle.
  std::vector<LinearFunctional> fns = fs.fns;
  ChebyshevFit fit;
  const int max_rounds = 200;
  for (int round = 0; round < max_rounds; ++round) {
    fit = finish_fit(fs, f, A, false, fns);
    fit.cg_rounds = round + 1;
    CoeffVector resid = f - fit.fitted();
    double true_norm = norm(fs.space, resid);
    if (true_norm <= fit.residual + 1e-9) {
      fit.residual = true_norm;
      return fit;
    }
    fns.push_back(separating_functional(fs.space, resid));
  }
  throw std::runtime_error("minmax_lp: column generation did not converge");
}

ChebyshevFit chebyshev_sum(const SpaceSpec& sp, const CoeffVector& f, const IndexSet& A,
                           bool exact) {
  if (sp.kind == SpaceKind::lp_quasi) {
    // The norm is coordinatewise separable: the best fit matches f on A.
    ChebyshevFit fit;
    fit.A = A;
    fit.coeffs = projection_coeffs(f, A);
    CoeffVector resid = f - fit.fitted();
    if (sp.p == 1.0) {
      fit.method = ChebyshevFit::Method::lp_exact;
      Rat r = norm_exact(sp, resid);
      fit.residual = to_double(r);
      if (exact) fit.residual_exact = r;
      // certificate: the sign pattern of the residual
      LinearFunctional phi;
      for (const auto& [n, a] : resid.entries()) phi.coeffs.emplace_back(n, Rat(coeff_sign(a)));
      fit.active.push_back(std::move(phi));
    } else {
      if (exact) throw std::invalid_argument("chebyshev_sum: no exact mode for lp_quasi(p<1)");
      // p < 1: nonconvex in general, but sum_n |f_n - c_n|^p is separable, so
      // every descent sweep lands on c = f|_A; reported as iterative.
      fit.method = ChebyshevFit::Method::iterative;
      fit.residual = norm(sp, resid);
    }
    return fit;
  }
  if (exact && !sp.rational_norm())
    throw std::invalid_argument("chebyshev_sum: exact mode unavailable for this space");
  Index window = std::max({f.max_index(), A.empty() ? 0 : A.max(), 1});
  if (sp.constructed()) window = std::max<Index>(window, static_cast<Index>(2 * sp.scales.back().n));
  auto fs = polyhedral_functionals(sp, window);
  return minmax_lp(fs, f, A, exact);
}

ChebyshevFit ctga(const SpaceSpec& sp, const CoeffVector& f, int m, bool exact) {
  auto g = canonical_greedy_set(f, m);
  return chebyshev_sum(sp, f, g.set, exact);
}

}  // namespace greedylb
