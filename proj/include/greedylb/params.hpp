#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greedylb/chebyshev.hpp"
#include "greedylb/coeff.hpp"
#include "greedylb/greedy.hpp"
#include "greedylb/space.hpp"

namespace greedylb {

enum class ParamKind {
  g,         // greedy-sum parameter:       ||P_A f|| <= C ||f||, A greedy
  g_c,       // quasi-greedy parameter:     ||f - P_A f|| <= C ||f||
  k_uncond,  // unconditionality:           ||P_A f|| <= C ||f||, A arbitrary
  mu,        // democracy
  mu_d,      // disjoint democracy
  mu_t,      // super-democracy
  mu_t_d,    // disjoint super-democracy
  lambda,    // squeeze symmetry
  lambda_c,  // conservative squeeze symmetry
  lambda_d,  // disjoint squeeze symmetry
  nu,        // symmetry for largest coefficients
  nu_d,
  omega,     // residual comparison parameter over the F_m family
  r_trunc,   // truncation ratio parameter
  L,         // Lebesgue parameter (best m-term benchmark)
  L_a,       // best-projection benchmark
  L_s,       // best-partial-sum benchmark
  L_ch,      // Chebyshev (semi-greedy) parameter
  D_cons,    // conservative constant, graded by |B| <= m
  K_basis,   // partial-sum (Schauder) constant sup_n ||P_n||
};

std::string param_name(ParamKind k);
std::optional<ParamKind> param_from_name(std::string_view name);
const std::vector<ParamKind>& all_param_kinds();

/// One concrete tuple instantiating a parameter's defining supremum.
struct WitnessInstance {
  ParamKind kind = ParamKind::g;
  int m = 0;
  CoeffVector f;
  IndexSet A, B;
  SignPattern eps, eta;
  int k = 0;  // inner index (L_s explicit k, K_basis n)
  Rat t = 0;  // omega's scalar

  std::string str() const;  // canonical serialization (deterministic tie-breaks)
};

struct SearchConfig {
  int pool_size = 200;
  std::uint64_t random_seed = 12345;
  int window = 6;  // N
  std::vector<Rat> grid = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2)};
  int m_lo = 1, m_hi = 4;
  std::uint64_t budget = 20'000'000;
  bool omega_le = false;  // read "A < m" as max A <= m
  int threads = 0;        // 0 = hardware concurrency

  static SearchConfig from_json_text(const std::string& text);
  std::string grid_str() const;
};

struct ParamEstimate {
  ParamKind kind = ParamKind::g;
  int m = 0;
  double value = 0.0;
  std::optional<Rat> value_exact;
  enum class Mode { witness_lower_bound, windowed_exact } mode = Mode::witness_lower_bound;
  int window = 0;
  std::string grid;
  WitnessInstance witness;
};

/// Exact quotient whose supremum defines the parameter; re-verifies
/// admissibility. Throws on inadmissible instances and on unbounded
/// witnesses (zero denominator with positive numerator). 0/0 gives 0.
double ratio_eval(const SpaceSpec& sp, const WitnessInstance& inst);
Rat ratio_eval_exact(const SpaceSpec& sp, const WitnessInstance& inst);
bool admissible(const SpaceSpec& sp, const WitnessInstance& inst, std::string* why = nullptr);

/// Witness mode: certified lower bound over structured families plus seeded
/// random instances; pools nest in m.
ParamEstimate estimate(const SpaceSpec& sp, ParamKind kind, int m, const SearchConfig& cfg);

/// Windowed-exact mode: exact maximum of the ratio over every admissible
/// instance with supp(f) in I_N and grid coefficients, all greedy sets
/// enumerated. Indicator sets range over the enlarged window I_{N+m}.
ParamEstimate windowed_exact(const SpaceSpec& sp, ParamKind kind, int m,
                             const SearchConfig& cfg);

ParamEstimate basis_constant(const SpaceSpec& sp, const SearchConfig& cfg);

// ---------------------------------------------------------------------------
// Batch windowed evaluation with shared pools and the pointwise proof oracles
// (used by the verification suites; one enumeration feeds every requested
// parameter so chain checks compare values computed from identical pools).
// ---------------------------------------------------------------------------

struct PointwiseStats {
  long checked = 0;
  long failed = 0;
  double worst_margin = 0.0;  // most negative rhs - lhs seen
  std::string worst_witness;
};

struct WindowedValues {
  std::map<ParamKind, ParamEstimate> values;
  bool exact = false;
  // pointwise oracles accumulated during enumeration
  PointwiseStats quasi_g;       // ratio_g <= (1 + ratio_gc^p)^{1/p} per instance
  PointwiseStats quasi_gc;      // ratio_gc <= (1 + ratio_g^p)^{1/p} per instance
  PointwiseStats main1_decomp;  // proof decomposition of Theorem main1
  PointwiseStats omega_chain;   // omega ratio <= induced L_s ratio
  double L_s_with_induced = 0.0;  // L_s over grid pool plus induced instances
};

struct WindowedRequest {
  std::vector<ParamKind> kinds;
  int N = 5;
  int m = 3;
  std::vector<Rat> grid = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2)};
  bool omega_le = false;
  bool run_main1_oracle = false;
  int threads = 0;
  std::uint64_t budget = 200'000'000;
};

WindowedValues windowed_exact_all(const SpaceSpec& sp, const WindowedRequest& req);

/// Exact windowed inner infimum inf{||f - y|| : |supp(y)| <= m, supp(y) in I_N}
/// (closed forms for the coordinatewise norms, Chebyshev solves otherwise).
double min_mterm_error(const SpaceSpec& sp, const CoeffVector& f, int m, int N);
Rat min_mterm_error_exact(const SpaceSpec& sp, const CoeffVector& f, int m, int N);

}  // namespace greedylb
