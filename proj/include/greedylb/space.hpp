#pragma once

#include <optional>
#include <string>
#include <vector>

#include "greedylb/coeff.hpp"
#include "greedylb/quad.hpp"

namespace greedylb {

enum class SpaceKind { lp_quasi, c0_sup, c0_summing, prop5_space, prop6_space };

std::string kind_name(SpaceKind k);
std::optional<SpaceKind> kind_from_name(std::string_view name);

struct ScalePair {
  long n = 0;  // block size n_k (even for the prop5 construction)
  long m = 0;  // weight m_k > 5
};

/// Description of one quasi-normed sequence space.
///
/// Constructed spaces carry a finite scale list. Scales beyond the list are
/// not materialized: for any admissible continuation the hidden D_l and Q_l
/// terms are bounded by ||v||_1 / m_{K+1} <= ||v||_1 / (2 n_K + 1), and the
/// norm includes that closed-form cap as its tail term.
class SpaceSpec {
 public:
  SpaceKind kind = SpaceKind::c0_sup;
  double p = 1.0;              // p-Banach exponent (1 except for lp_quasi(p<1))
  std::vector<ScalePair> scales;
  bool strict_growth = false;

  static SpaceSpec lp(double p);
  static SpaceSpec c0();
  static SpaceSpec summing();
  static SpaceSpec prop5(std::vector<ScalePair> scales, bool strict = false);
  static SpaceSpec prop6(std::vector<ScalePair> scales, bool strict = false);
  /// Minimal strict one-scale instances: m1 = 6 with n1 = 2594 (prop5) or 1297 (prop6).
  static SpaceSpec prop5_minimal();
  static SpaceSpec prop6_minimal();

  /// Shorthand names ("lp1", "lp:0.5", "c0", "summing", "prop5", "prop6",
  /// "prop5:n,m[,n,m...]") or "@file.json".
  static SpaceSpec from_name(const std::string& name);
  static SpaceSpec from_json_text(const std::string& text);
  std::string to_json_text() const;

  bool constructed() const {
    return kind == SpaceKind::prop5_space || kind == SpaceKind::prop6_space;
  }
  bool polyhedral() const {
    return kind != SpaceKind::lp_quasi || p == 1.0;
  }
  /// True when the norm of rational vectors is rational (exact Rat mode works).
  bool rational_norm() const {
    return kind == SpaceKind::c0_sup || kind == SpaceKind::c0_summing ||
           (kind == SpaceKind::lp_quasi && p == 1.0);
  }
  std::string name() const;

 private:
  void validate() const;
};

// ---------------------------------------------------------------------------
// Norm evaluation. Float mode works for every space; exact modes:
//   norm_exact       -- Rat, classical polyhedral spaces only
//   norm_exact_roots -- Quad, also constructed spaces with n_k <= 4
// ---------------------------------------------------------------------------

double norm(const SpaceSpec& sp, const CoeffVector& v);
Rat norm_exact(const SpaceSpec& sp, const CoeffVector& v);
Quad norm_exact_roots(const SpaceSpec& sp, const CoeffVector& v);

/// D_k((a_n)) = (1/m_k) max_{1<=r<=n_k} (sum of r largest |a_n|, n > 2 n_k) / sqrt(r).
double eval_D(const SpaceSpec& sp, int k, const CoeffVector& v);
Quad eval_D_exact(const SpaceSpec& sp, int k, const CoeffVector& v);

enum class DeltaVariant { prop5, prop6 };

DeltaVariant variant_of(const SpaceSpec& sp);

/// Q_k((a_n)) = (1/m_k) sup_{delta in Delta_k} sum_{n<=2n_k} delta_n a_n.
/// Dispatches between the LP path (small scales, exact-capable) and the
/// parametric dual path (large scales, float).
double eval_Q(const SpaceSpec& sp, int k, const CoeffVector& v);
double eval_Q(const SpaceSpec& sp, int k, const CoeffVector& v, DeltaVariant variant);
Quad eval_Q_exact(const SpaceSpec& sp, int k, const CoeffVector& v);

/// LP path: sign-split variables plus the per-r budget encoding of the
/// majorization family. Optionally reports a maximizing delta.
double eval_Q_lp(const SpaceSpec& sp, int k, const CoeffVector& v,
                 std::vector<double>* delta_out = nullptr);
Quad eval_Q_lp_exact(const SpaceSpec& sp, int k, const CoeffVector& v,
                     std::vector<Quad>* delta_out = nullptr);

/// Parametric dual path: with the single coupling constraint dualized,
/// m_k Q_k = min_nu [ h(nu) + |nu| ] for an explicitly evaluable convex
/// piecewise-linear h; minimized by golden section over the kink range.
double eval_Q_dual(const SpaceSpec& sp, int k, const CoeffVector& v);
/// Exact candidate scan over all kinks of the dual objective (small n_k).
Quad eval_Q_dual_exact(const SpaceSpec& sp, int k, const CoeffVector& v);

/// Lower/exact Q_k bounds from the explicit delta choices in the proofs.
/// `exact` marks the hypotheses under which the returned value equals Q_k:
/// prop5: supp(v) disjoint from I_{n_k} and |supp in upper block| <= n_k/2;
/// prop6: supp(v) inside the upper block {n_k+1..2n_k}.
struct QWitnessBound {
  Rat value_times_sqrt;  // bound = value_times_sqrt / sqrt(sqrt_arg)
  long sqrt_arg = 1;
  bool exact = false;
  double value() const;
};
std::optional<QWitnessBound> eval_Q_witness(const SpaceSpec& sp, int k, const CoeffVector& v);

bool delta_feasible(const std::vector<double>& delta, const SpaceSpec& sp, int k,
                    double tol = 1e-9);
bool delta_feasible_exact(const std::vector<Quad>& delta, const SpaceSpec& sp, int k);

/// ell_1 mass of the coefficients (the tail cap is ||v||_1 / (2 n_K + 1)).
Rat ell1_mass(const CoeffVector& v);

/// Windowed dual functional bound: sup |a_n| over ||v|| <= 1, supp(v) in I_N.
/// Exact (LP) for polyhedral classical spaces; certified lower bound from a
/// multi-start ratio search otherwise.
struct DualNormEstimate {
  double value = 0.0;
  bool exact = false;
};
DualNormEstimate dual_functional_norm(const SpaceSpec& sp, Index n, int N);

}  // namespace greedylb
