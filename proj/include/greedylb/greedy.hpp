#pragma once

#include <cstdint>
#include <vector>

#include "greedylb/coeff.hpp"
#include "greedylb/space.hpp"

namespace greedylb {

struct GreedyResult {
  std::vector<Index> order;  // k(1), ..., k(m)
  IndexSet set;
  CoeffVector greedy_sum;
  CoeffVector residual;
};

struct TruncationResult {
  Rat alpha;
  IndexSet over_threshold;  // G_alpha(f) = {n : |a_n| > alpha}
  CoeffVector truncated;    // T_alpha(f)
};

/// All greedy sets of f of order m: every m-element A with
/// min_{n in A} |a_n| >= max_{n not in A} |a_n|.  When m exceeds the support
/// size the remaining indices are drawn from [1, universe] (universe = 0
/// defaults to max(m, max support index)).  Throws when the tie-class
/// expansion exceeds max_sets or the universe cannot supply m indices.
std::vector<IndexSet> greedy_sets(const CoeffVector& f, int m, Index universe = 0,
                                  std::uint64_t max_sets = 1'000'000);

/// True iff A is a greedy set of f of order |A|.
bool is_greedy_set(const CoeffVector& f, const IndexSet& A);

/// The TGA recursion with natural-order tie-breaking; indices past the
/// support continue with the smallest unused index (the argmax over zero
/// coefficients).
GreedyResult canonical_greedy_set(const CoeffVector& f, int m);

/// f - G_m(f) for the canonical greedy set.
CoeffVector tga_residual(const SpaceSpec& space, const CoeffVector& f, int m);

/// T_alpha clamps |a_n| > alpha to alpha * sign(a_n); sign(0) = 1.
TruncationResult truncate(const CoeffVector& f, const Rat& alpha);

/// A_p = (2^p - 1)^{1/p}.
double a_p(double p);

/// eta_p(u) = min_{0<t<1} (1-t^p)^{-1/p} (1-(1+A_p^{-1} u^{-1} t)^{-p})^{-1/p},
/// minimized by golden section from 64 multi-start seeds on a log grid.
double eta_p(double p, double u);

}  // namespace greedylb
