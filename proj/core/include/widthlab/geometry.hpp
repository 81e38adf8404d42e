#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "widthlab/errors.hpp"

namespace widthlab {

// Width values below this are treated as a degenerate (not full-dimensional)
// body.
inline constexpr double kMinWidth = 1e-9;

/// A unit vector on S^{n-1}. Inputs within 1e-8 of unit norm are
/// renormalized; anything farther off is rejected.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd coords);

  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  Direction negated() const;

  double operator[](int i) const { return coords_[i]; }

 private:
  Eigen::VectorXd coords_;
};

struct Ball {
  Eigen::VectorXd center;
  double radius = 1.0;
};

struct Ellipsoid {
  Eigen::MatrixXd shape;  // invertible; body = center + shape * B
  Eigen::VectorXd center;
};

struct Polytope {
  std::vector<Eigen::VectorXd> vertices;
};

class SupportBody;

struct LinearImage {
  Eigen::MatrixXd matrix;  // invertible
  std::shared_ptr<const SupportBody> inner;
};

/// A convex body represented by its support-function oracle.
class SupportBody {
 public:
  using Variant = std::variant<Ball, Ellipsoid, Polytope, LinearImage>;

  SupportBody(Variant body, int dim);

  static SupportBody ball(Eigen::VectorXd center, double radius);
  static SupportBody unit_ball(int dim);
  static SupportBody ellipsoid(Eigen::MatrixXd shape, Eigen::VectorXd center);
  static SupportBody polytope(std::vector<Eigen::VectorXd> vertices);

  const Variant& body() const { return body_; }
  int dim() const { return dim_; }

 private:
  Variant body_;
  int dim_;
};

/// h(K,x) = max { x.y : y in K }. Positively homogeneous of degree 1 in x.
double support(const SupportBody& body, const Eigen::VectorXd& x);

/// b(K,u) = (h(K,u) + h(K,-u)) / 2. Even in u and translation invariant.
double half_width(const SupportBody& body, const Direction& u);

/// Lazy linear-image wrapper: support(AK, x) = support(K, A^T x) exactly.
SupportBody linear_image(const SupportBody& body, const Eigen::MatrixXd& a);

/// An evaluable positive even function u -> b(u) on the unit sphere; the
/// closure type for bodies and for all width additions. Immutable; the
/// memo cache is internally synchronized.
class WidthProfile {
 public:
  using Evaluator = std::function<double(const Direction&)>;

  WidthProfile(int dim, std::string provenance, Evaluator eval,
               bool memoize = false);

  /// Profile of a body's half-width function.
  static WidthProfile from_body(SupportBody body);

  double operator()(const Direction& u) const;
  int dim() const { return dim_; }
  const std::string& provenance() const { return provenance_; }

 private:
  struct Cache {
    std::mutex mutex;
    // Keyed on the exact coordinate bytes; structured quadrature grids
    // collide too often under a plain hash key.
    std::unordered_map<std::string, double> values;
  };

  int dim_;
  std::string provenance_;
  Evaluator eval_;
  std::shared_ptr<Cache> cache_;  // null when memoization is off
};

struct BodyDiagnostics {
  double min_width = 0.0;  // r_K over the rule's nodes
  double max_width = 0.0;  // R_K over the rule's nodes
  bool degenerate = false;
};

class QuadratureRule;

BodyDiagnostics validate_body(const SupportBody& body,
                              const QuadratureRule& rule);

/// Width extrema (r, R) of a profile over the rule's nodes.
std::pair<double, double> width_extrema(const WidthProfile& profile,
                                        const QuadratureRule& rule);

}  // namespace widthlab
