#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/functionals.hpp"
#include "widthlab/geometry.hpp"
#include "widthlab/orlicz.hpp"
#include "widthlab/sphere_quad.hpp"
#include "widthlab/width_addition.hpp"

namespace widthlab {

/// Outcome of one inequality/identity verification. Slack >= 0 means the
/// inequality is satisfied; identities use |lhs - rhs| against the
/// tolerance.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  bool equality_case = false;
  bool probe_only = false;    // probes report, never assert
  bool inconclusive = false;  // e.g. non-monotone finite-difference sequence
  std::string inputs_digest;
};

struct Tolerances {
  double ineq = 1e-8;     // inequality slack floor (log domain)
  double identity = 1e-9; // identity |lhs - rhs| bound
  double equality = 1e-5; // equality-case detection
  double fd_rel = 1e-3;   // variation check relative error
};

struct EnsembleConfig {
  std::uint64_t seed = 42;
  int dim = 2;
  int trials = 200;
  int resolution = 0;  // 0 -> per-dim campaign default
  Tolerances tol;
  std::vector<double> p_values = {1.0, 2.0, 3.0};
};

/// Deterministic (seed, index)-derived random body: polytope in convex
/// position, ellipsoid with eigenvalues in [0.3, 3], or ball; rejected
/// until min width >= 0.05.
SupportBody random_body(const EnsembleConfig& config, std::uint64_t index);

/// Minkowski inequality (i-th mixed width):
/// A_i(K,L)^{n-i} <= A_i(K)^{n-i-1} A_i(L); slack in log domain.
CheckReport check_minkowski_i(const WidthProfile& k, const WidthProfile& l,
                              int i, const QuadratureRule& rule,
                              const Tolerances& tol);

/// L_p Minkowski: A_{-p,i}(K,L)^{n-i} >= A_i(K)^{n-i+p} A_i(L)^{-p}.
CheckReport check_lp_minkowski(const WidthProfile& k, const WidthProfile& l,
                               double p, int i, const QuadratureRule& rule,
                               const Tolerances& tol);

/// L_p Brunn-Minkowski:
/// A_i(K +_p L)^{-p/(n-i)} >= A_i(K)^{-p/(n-i)} + A_i(L)^{-p/(n-i)}.
CheckReport check_lp_brunn_minkowski(const WidthProfile& k,
                                     const WidthProfile& l, double p, int i,
                                     const QuadratureRule& rule,
                                     const Tolerances& tol);

/// Orlicz Minkowski:
/// A_{phi,i}(K,L) >= A_i(K) phi((A_i(L)/A_i(K))^{1/(n-i)}).
CheckReport check_orlicz_minkowski(const OrliczFunction& phi,
                                   const WidthProfile& k,
                                   const WidthProfile& l, int i,
                                   const QuadratureRule& rule,
                                   const Tolerances& tol);

/// Orlicz Brunn-Minkowski: with M = A_i(K +_phi L),
/// 1 >= phi1((A_i(K)/M)^{1/(n-i)}) + phi2((A_i(L)/M)^{1/(n-i)}).
CheckReport check_orlicz_brunn_minkowski(const OrliczFunction& phi1,
                                         const OrliczFunction& phi2,
                                         const WidthProfile& k,
                                         const WidthProfile& l, int i,
                                         const QuadratureRule& rule,
                                         const Tolerances& tol);

/// Decomposition identity:
/// A_i(K+_phi L) = A_{phi1,i}(K+_phi L, K) + A_{phi2,i}(K+_phi L, L).
CheckReport check_decomposition(const OrliczFunction& phi1,
                                const OrliczFunction& phi2,
                                const WidthProfile& k, const WidthProfile& l,
                                int i, const QuadratureRule& rule,
                                const Tolerances& tol);

/// First-order variation: Richardson-extrapolated one-sided limit of
/// (A_i(K +_phi eps L) - A_i(K)) / eps, scaled by (phi1)'_r(1)/(n-i),
/// compared against A_{phi2,i}(K,L).
CheckReport check_variation(const OrliczFunction& phi1,
                            const OrliczFunction& phi2, const WidthProfile& k,
                            const WidthProfile& l, int i,
                            const QuadratureRule& rule, const Tolerances& tol,
                            std::vector<double> steps = {1e-3, 5e-4, 2.5e-4});

/// Width bounds of the m-fold sum with equal phi:
/// r/phi^{-1}(1/m) <= b(sum, u) <= R/phi^{-1}(1/m) at every node.
CheckReport check_sum_width_bounds(const OrliczFunction& phi,
                                 const std::vector<WidthProfile>& operands,
                                 const QuadratureRule& rule,
                                 const Tolerances& tol);

/// Reports the relative discrepancy of A_{phi,i}(AK, AL) vs A_{phi,i}(K,L)
/// for det A = 1. PASS is asserted only for rotations; for general SL(n)
/// maps the discrepancy is recorded in probe mode.
CheckReport probe_linear_covariance(const OrliczFunction& phi,
                                    const SupportBody& k, const SupportBody& l,
                                    int i, const Eigen::MatrixXd& a,
                                    const QuadratureRule& rule,
                                    const Tolerances& tol);

/// True iff the ratio b(L,u)/b(K,u) is constant over the rule's nodes
/// within eq_tol relative.
bool similar_width_detect(const WidthProfile& k, const WidthProfile& l,
                          const QuadratureRule& rule, double eq_tol);

struct CheckSummary {
  int trials = 0;
  int passes = 0;
  int inconclusive = 0;
  int equality_cases = 0;
  double min_slack = 0.0;
};

struct CampaignReport {
  EnsembleConfig config;
  std::vector<CheckReport> checks;  // sorted by trial order
  std::map<std::string, CheckSummary> summary;
  std::vector<std::string> errors;
  bool all_asserted_passed = true;
};

/// Runs every check over the seeded ensemble; deterministic given the
/// config. Generation/solver errors are recorded per trial and the
/// campaign continues.
CampaignReport run_campaign(const EnsembleConfig& config, int threads = 1);

}  // namespace widthlab
