#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greedylb/coeff.hpp"
#include "greedylb/space.hpp"

namespace greedylb {

/// Sparse linear functional with exact rational coefficients (irrational
/// separation functionals are embedded through their double images).
struct LinearFunctional {
  std::vector<std::pair<Index, Rat>> coeffs;

  Rat apply(const CoeffVector& v) const;
  double apply_f64(const CoeffVector& v) const;
};

/// Finite functional list with max_i |phi_i| = ||.|| on a coordinate window.
/// For constructed spaces the list is only the fixed seed (coordinate
/// functionals plus the tail cap patterns are generated on demand); the
/// D_k/Q_k families are represented implicitly by a separation oracle and
/// `complete` is false.
struct LinearFunctionalSet {
  std::vector<LinearFunctional> fns;
  int window = 0;
  bool complete = false;
  SpaceSpec space;
};

/// Exact finite representation of the norm on I_window.
/// c0_sup: coordinate functionals. c0_summing: tail sums. lp_quasi(1): sign
/// patterns (window <= 16). Constructed: incomplete seed plus oracle.
/// Errors on lp_quasi(p < 1).
LinearFunctionalSet polyhedral_functionals(const SpaceSpec& sp, int window);

/// Functional realizing the largest norm term of v (separation oracle used by
/// the column-generation loop on constructed spaces).
LinearFunctional separating_functional(const SpaceSpec& sp, const CoeffVector& v);

struct ChebyshevFit {
  IndexSet A;
  std::vector<std::pair<Index, Rat>> coeffs;  // best coefficients on A
  double residual = 0.0;
  std::optional<Rat> residual_exact;  // set by the exact path
  enum class Method { lp_exact, iterative };
  Method method = Method::lp_exact;
  std::vector<LinearFunctional> active;  // optimality certificate (lp_exact)
  int cg_rounds = 0;

  CoeffVector fitted() const;  // sum_n c_n x_n
};

/// min over (c_n) of max_i |phi_i(f - sum c_n x_n)|, as an LP with an
/// epigraph variable and two-sided rows; exact simplex when exact is set.
ChebyshevFit minmax_lp(const LinearFunctionalSet& fs, const CoeffVector& f,
                       const IndexSet& A, bool exact = false);

/// Best coefficients on A for the space norm.  lp_quasi uses the separable
/// coordinate solution (reported as iterative descent for p < 1); polyhedral
/// norms go through minmax_lp; constructed norms run column generation
/// against the separation oracle.
ChebyshevFit chebyshev_sum(const SpaceSpec& sp, const CoeffVector& f, const IndexSet& A,
                           bool exact = false);

/// Chebyshev TGA: chebyshev_sum on the canonical greedy set A_m(f).
ChebyshevFit ctga(const SpaceSpec& sp, const CoeffVector& f, int m, bool exact = false);

}  // namespace greedylb
