#pragma once

#include <vector>

#include "widthlab/geometry.hpp"
#include "widthlab/orlicz.hpp"

namespace widthlab {

/// One term of the implicit width-addition equation
/// sum_j c_j * phi_j(b_j / lambda) = 1.
struct LambdaTerm {
  OrliczFunction phi;
  double coefficient;  // nonnegative, not all zero
  double width;        // b_j >= kMinWidth
};

/// Solves sum_j c_j phi_j(b_j / lambda) = 1 for the unique lambda > 0.
/// The left side is strictly increasing in lambda, so the root is unique;
/// the bracket starts at [min b * 1e-6, max b * 1e6], expands
/// geometrically until a sign change, then bisects to relative tolerance
/// 1e-12 (at most 200 iterations).
double solve_lambda(const std::vector<LambdaTerm>& terms);

/// Orlicz width sum of m >= 2 operands for phi = sum of univariate parts:
/// the profile whose value at u solves sum_j phi_j(b_j(u)/lambda) = 1.
WidthProfile orlicz_width_sum(const OrliczFunctionM& phi,
                              const std::vector<WidthProfile>& operands);

/// Orlicz width linear combination: the profile solving
/// alpha phi1(b_K/lambda) + beta phi2(b_L/lambda) = 1 per direction.
/// With beta = 0 and alpha = 1 it short-circuits to K.
WidthProfile orlicz_linear_combination(const OrliczFunction& phi1,
                                       const OrliczFunction& phi2,
                                       const WidthProfile& k,
                                       const WidthProfile& l, double alpha,
                                       double beta);

/// L_p width sum: b^{-p} = b_K^{-p} + b_L^{-p}, closed form, no solver.
WidthProfile lp_width_sum(double p, const WidthProfile& k,
                          const WidthProfile& l);

}  // namespace widthlab
