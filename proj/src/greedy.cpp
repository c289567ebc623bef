#include "greedylb/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace greedylb {

bool is_greedy_set(const CoeffVector& f, const IndexSet& A) {
  Rat min_in = -1;  // sentinel: empty A
  bool have_in = false;
  for (Index n : A) {
    Rat m = rat_abs(f.at(n));
    if (!have_in || m < min_in) {
      min_in = m;
      have_in = true;
    }
  }
  if (!have_in) return true;  // order 0
  for (const auto& [n, a] : f.entries()) {
    if (!A.contains(n) && rat_abs(a) > min_in) return false;
  }
  return true;
}

std::vector<IndexSet> greedy_sets(const CoeffVector& f, int m, Index universe,
                                  std::uint64_t max_sets) {
  if (m < 0) throw std::invalid_argument("greedy_sets: m must be >= 0");
  if (m == 0) return {IndexSet{}};

  // Group support indices by modulus, descending.
  std::map<Rat, std::vector<Index>, std::greater<Rat>> classes;
  for (const auto& [n, a] : f.entries()) classes[rat_abs(a)].push_back(n);

  std::vector<Index> forced;
  std::vector<Index> tie_class;
  int remaining = m;
  for (const auto& [mag, idxs] : classes) {
    if (remaining == 0) break;
    if (static_cast<int>(idxs.size()) <= remaining) {
      forced.insert(forced.end(), idxs.begin(), idxs.end());
      remaining -= static_cast<int>(idxs.size());
    } else {
      tie_class = idxs;
      break;
    }
  }
  if (remaining > 0 && tie_class.empty()) {
    // m exceeds the support: pad from the zero coordinates of the universe.
    if (universe == 0) universe = std::max<Index>(m, f.max_index());
    IndexSet supp = support(f);
    for (Index n = 1; n <= universe; ++n) {
      if (!supp.contains(n)) tie_class.push_back(n);
    }
    if (static_cast<int>(tie_class.size()) < remaining)
      throw std::invalid_argument("greedy_sets: universe too small to supply m indices");
  }

  if (remaining == 0) {
    return {IndexSet(forced)};
  }
  // Enumerate remaining-element subsets of the tie class.
  const std::uint64_t k = static_cast<std::uint64_t>(remaining);
  const std::uint64_t t = tie_class.size();
  if (t < k) throw std::invalid_argument("greedy_sets: tie class too small");
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    count = count * (t - i) / (i + 1);
    if (count > max_sets) throw std::runtime_error("greedy_sets: tie-class budget exceeded");
  }
  std::vector<IndexSet> out;
  out.reserve(count);
  std::vector<std::uint64_t> comb(k);
  for (std::uint64_t i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    std::vector<Index> idx = forced;
    for (std::uint64_t i : comb) idx.push_back(tie_class[i]);
    out.emplace_back(std::move(idx));
    // next combination
    long long i = static_cast<long long>(k) - 1;
    while (i >= 0 && comb[i] == t - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (std::uint64_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

GreedyResult canonical_greedy_set(const CoeffVector& f, int m) {
  if (m < 0) throw std::invalid_argument("canonical_greedy_set: m must be >= 0");
  GreedyResult res;
  IndexSet chosen;
  for (int step = 0; step < m; ++step) {
    // minimal index attaining the maximum modulus among unchosen coordinates
    Index best = 0;
    Rat best_mag = -1;
    for (const auto& [n, a] : f.entries()) {
      if (chosen.contains(n)) continue;
      Rat mag = rat_abs(a);
      if (mag > best_mag) {
        best_mag = mag;
        best = n;
      }
    }
    if (best == 0) {
      // Support exhausted: all remaining coordinates are zero and tie, so the
      // recursion's min picks the smallest unused index.
      best = 1;
      while (chosen.contains(best)) ++best;
    }
    chosen.insert(best);
    res.order.push_back(best);
  }
  res.set = chosen;
  res.greedy_sum = project(f, chosen);
  res.residual = f - res.greedy_sum;
  return res;
}

CoeffVector tga_residual(const SpaceSpec& space, const CoeffVector& f, int m) {
  (void)space;
  return canonical_greedy_set(f, m).residual;
}

TruncationResult truncate(const CoeffVector& f, const Rat& alpha) {
  if (alpha <= 0) throw std::invalid_argument("truncate: alpha must be positive");
  TruncationResult r;
  r.alpha = alpha;
  std::vector<std::pair<Index, Rat>> ent;
  for (const auto& [n, a] : f.entries()) {
    if (rat_abs(a) > alpha) {
      r.over_threshold.insert(n);
      ent.emplace_back(n, Rat(coeff_sign(a)) * alpha);
    } else {
      ent.emplace_back(n, a);
    }
  }
  r.truncated = CoeffVector::from_entries(std::move(ent));
  return r;
}

double a_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("a_p: p must lie in (0,1]");
  return std::pow(std::pow(2.0, p) - 1.0, 1.0 / p);
}

namespace {

double eta_objective(double p, double u, double t) {
  const double ap = a_p(p);
  double first = std::pow(1.0 - std::pow(t, p), -1.0 / p);
  double inner = 1.0 - std::pow(1.0 + t / (ap * u), -p);
  return first * std::pow(inner, -1.0 / p);
}

}  // namespace

double eta_p(double p, double u) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("eta_p: p must lie in (0,1]");
  if (!(u > 0.0)) throw std::invalid_argument("eta_p: u must be positive");
  // Unimodality is not claimed, so run golden section from seeds spread on a
  // log grid over (0,1) and keep the best.
  const double lo_edge = 1e-12, hi_edge = 1.0 - 1e-12;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = std::numeric_limits<double>::infinity();
  const int seeds = 64;
  for (int s = 0; s < seeds; ++s) {
    // seed centers log-spaced in (1e-6, 1), bracketed by neighbors
    double c = std::exp(std::log(1e-6) * (1.0 - (s + 0.5) / seeds));
    double lo = std::max(lo_edge, c * 0.25), hi = std::min(hi_edge, c * 4.0);
    if (lo >= hi) continue;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = eta_objective(p, u, x1), f2 = eta_objective(p, u, x2);
    for (int it = 0; it < 90; ++it) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = eta_objective(p, u, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = eta_objective(p, u, x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

}  // namespace greedylb
