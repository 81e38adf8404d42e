#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "widthlab/geometry.hpp"

namespace widthlab {

/// Surface area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int dim);

/// Nodes and weights approximating integration against surface measure dS
/// on S^{n-1}.
///
/// dim 2: trapezoid rule on equally spaced angles (count divisible by 4 so
/// axis kinks of polytope integrands fall on nodes). dim 3: product of
/// Gauss-Legendre in cos(theta) with a uniform azimuthal grid. dim >= 4:
/// seeded Monte Carlo from normalized Gaussian samples.
class QuadratureRule {
 public:
  enum class Kind { CircleTrapezoid, SphereProductGauss, MonteCarlo };

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  int resolution() const { return resolution_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  const std::vector<Direction>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  std::string kind_name() const;

  friend QuadratureRule build_rule(int dim, int resolution,
                                   std::optional<std::uint64_t> seed);

 private:
  QuadratureRule() = default;

  int dim_ = 0;
  Kind kind_ = Kind::CircleTrapezoid;
  int resolution_ = 0;
  std::optional<std::uint64_t> seed_;
  std::vector<Direction> nodes_;
  std::vector<double> weights_;
};

QuadratureRule build_rule(int dim, int resolution,
                          std::optional<std::uint64_t> seed = std::nullopt);

/// Default resolution per dimension (2 -> 65536, 3 -> 64, >=4 -> 200000
/// Monte Carlo samples), overridable via WIDTHLAB_DEFAULT_RESOLUTION.
int default_resolution(int dim);

/// Sum of w_i * f(u_i). Throws numeric_error naming the node if f is not
/// finite there.
double integrate(const QuadratureRule& rule,
                 const std::function<double(const Direction&)>& f);

}  // namespace widthlab
