#pragma once

#include <string>
#include <variant>
#include <vector>

#include "widthlab/errors.hpp"

namespace widthlab {

// Evaluation arguments are clamped to [kPhiArgFloor, kPhiArgCeil] before
// exponentiation; phi(0) = infinity is realized as the finite overflow
// ceiling phi(kPhiArgFloor).
inline constexpr double kPhiArgFloor = 1e-12;
inline constexpr double kPhiArgCeil = 1e12;

/// A member of the class Phi: convex, strictly decreasing on (0, inf),
/// phi(1) = 1, phi(0+) = inf, phi(inf) = 0.
///
/// Built-in families: Power (t^-p, p >= 1) and Mixture (sum of weighted
/// powers with weights summing to 1).
class OrliczFunction {
 public:
  struct Power {
    double p;
  };
  struct Mixture {
    std::vector<double> weights;    // positive, summing to 1
    std::vector<double> exponents;  // each >= 1
  };
  using Descriptor = std::variant<Power, Mixture>;

  explicit OrliczFunction(Descriptor descriptor);

  static OrliczFunction power(double p);
  static OrliczFunction mixture(std::vector<double> weights,
                                std::vector<double> exponents);

  const Descriptor& descriptor() const { return descriptor_; }
  std::string describe() const;

  /// phi(t) with the argument clamped to [1e-12, 1e12]; t = 0 returns the
  /// overflow ceiling.
  double eval(double t) const;

  /// The unique t with phi(t) = y. Power is solved analytically, Mixture by
  /// bisection on a geometrically expanded bracket (relative tolerance
  /// 1e-12, at most 200 iterations).
  double inverse(double y) const;

  /// (phi)'_r(1); analytic for both built-in families.
  double right_derivative_at_one() const;

  bool strictly_convex() const;

 private:
  Descriptor descriptor_;
};

/// A member of Phi_m, m >= 2: decreasing in each variable, convex,
/// phi(e_j) = 1 when all coefficients are 1. Represented as a
/// coefficient-weighted sum of univariate parts.
class OrliczFunctionM {
 public:
  OrliczFunctionM(std::vector<OrliczFunction> parts,
                  std::vector<double> coefficients);

  static OrliczFunctionM sum(std::vector<OrliczFunction> parts);

  int arity() const { return static_cast<int>(parts_.size()); }
  const std::vector<OrliczFunction>& parts() const { return parts_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double eval(const std::vector<double>& x) const;

 private:
  std::vector<OrliczFunction> parts_;
  std::vector<double> coefficients_;
};

struct PhiDiagnostics {
  bool decreasing = false;
  bool midpoint_convex = false;
  bool normalized_at_one = false;  // phi(1) = 1 within 1e-12
  bool limits = false;             // large at the left end, small at the right
  bool all() const {
    return decreasing && midpoint_convex && normalized_at_one && limits;
  }
};

/// Numerical admissibility check on a log-spaced grid over [1e-6, 1e6].
PhiDiagnostics validate_phi(const OrliczFunction& f, int grid_size = 64);

}  // namespace widthlab
