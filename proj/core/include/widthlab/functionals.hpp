#pragma once

#include <vector>

#include "widthlab/geometry.hpp"
#include "widthlab/orlicz.hpp"
#include "widthlab/sphere_quad.hpp"

namespace widthlab {

/// Width integral A_i(K) = (1/n) integral of b(K,u)^{n-i} dS(u), 0 <= i < n.
double width_integral(const WidthProfile& k, int i, const QuadratureRule& rule);

/// Mixed width integral A(K_1,...,K_n) = (1/n) integral of the product of
/// the n half-widths. Requires exactly n operands of dimension n.
double mixed_width_integral(const std::vector<WidthProfile>& bodies,
                            const QuadratureRule& rule);

/// i-th mixed width integral
/// A_i(K,L) = (1/n) integral of b(K,u)^{n-i-1} b(L,u) dS(u).
double ith_mixed_width(const WidthProfile& k, const WidthProfile& l, int i,
                       const QuadratureRule& rule);

/// L_p mixed width integral
/// A_{-p,i}(K,L) = (1/n) integral of b(K,u)^{n-i+p} b(L,u)^{-p} dS(u).
double lp_mixed_width(const WidthProfile& k, const WidthProfile& l, double p,
                      int i, const QuadratureRule& rule);

/// Orlicz mixed width integral
/// A_{phi,i}(K,L) = (1/n) integral of phi(b_L/b_K) b_K^{n-i} dS(u).
double orlicz_mixed_width(const OrliczFunction& phi, const WidthProfile& k,
                          const WidthProfile& l, int i,
                          const QuadratureRule& rule);

/// Per-node weights of the width probability measure
/// dA_{n,i}(K,.) = b(K,.)^{n-i} / (n A_i(K)) dS. Sums to 1 exactly because
/// numerator and normalizer share the rule.
std::vector<double> width_measure_weights(const WidthProfile& k, int i,
                                          const QuadratureRule& rule);

}  // namespace widthlab
