#include "widthlab/sphere_quad.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

namespace widthlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int k = 0; k < m; ++k) {
    double z = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[k] = -z;
    x[n - 1 - k] = z;
    w[k] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - k] = w[k];
  }
}

}  // namespace

double sphere_area(int dim) {
  return 2.0 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
}

int default_resolution(int dim) {
  if (const char* env = std::getenv("WIDTHLAB_DEFAULT_RESOLUTION")) {
    const int r = std::atoi(env);
    if (r >= 16) return r;
  }
  if (dim == 2) return 65536;
  if (dim == 3) return 64;
  return 200000;
}

std::string QuadratureRule::kind_name() const {
  switch (kind_) {
    case Kind::CircleTrapezoid: return "circle-trapezoid";
    case Kind::SphereProductGauss: return "sphere-product-gauss";
    case Kind::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

QuadratureRule build_rule(int dim, int resolution,
                          std::optional<std::uint64_t> seed) {
  if (dim < 2) throw validation_error("build_rule: dim must be >= 2");
  if (resolution < 16) {
    throw validation_error("build_rule: resolution must be >= 16");
  }
  QuadratureRule rule;
  rule.dim_ = dim;

  if (dim == 2) {
    // Round up to a multiple of 4 so the coordinate axes and diagonals of
    // the grid line up with polytope kinks.
    resolution = ((resolution + 3) / 4) * 4;
    rule.kind_ = QuadratureRule::Kind::CircleTrapezoid;
    rule.resolution_ = resolution;
    const double w = 2.0 * kPi / resolution;
    rule.nodes_.reserve(resolution);
    rule.weights_.assign(resolution, w);
    for (int k = 0; k < resolution; ++k) {
      const double theta = 2.0 * kPi * k / resolution;
      Eigen::VectorXd u(2);
      u << std::cos(theta), std::sin(theta);
      rule.nodes_.emplace_back(std::move(u));
    }
  } else if (dim == 3) {
    rule.kind_ = QuadratureRule::Kind::SphereProductGauss;
    rule.resolution_ = resolution;
    std::vector<double> ct, cw;
    gauss_legendre(resolution, ct, cw);
    const int naz = 2 * resolution;
    const double wphi = 2.0 * kPi / naz;
    rule.nodes_.reserve(static_cast<std::size_t>(resolution) * naz);
    rule.weights_.reserve(rule.nodes_.capacity());
    for (int a = 0; a < resolution; ++a) {
      const double cos_t = ct[a];
      const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
      for (int b = 0; b < naz; ++b) {
        const double phi = 2.0 * kPi * b / naz;
        Eigen::VectorXd u(3);
        u << sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t;
        rule.nodes_.emplace_back(std::move(u));
        rule.weights_.push_back(cw[a] * wphi);
      }
    }
  } else {
    rule.kind_ = QuadratureRule::Kind::MonteCarlo;
    rule.resolution_ = resolution;
    rule.seed_ = seed.value_or(0);
    std::mt19937_64 gen(*rule.seed_);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double w = sphere_area(dim) / resolution;
    rule.nodes_.reserve(resolution);
    rule.weights_.assign(resolution, w);
    for (int k = 0; k < resolution; ++k) {
      Eigen::VectorXd u(dim);
      do {
        for (int j = 0; j < dim; ++j) u[j] = normal(gen);
      } while (u.norm() < 1e-8);
      u /= u.norm();
      rule.nodes_.emplace_back(std::move(u));
    }
  }
  return rule;
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(const Direction&)>& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double v = f(rule.nodes()[k]);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate: non-finite integrand at node " << k << " (";
      const auto& u = rule.nodes()[k].coords();
      for (Eigen::Index j = 0; j < u.size(); ++j) {
        msg << (j ? ", " : "") << u[j];
      }
      msg << ")";
      throw numeric_error(msg.str());
    }
    sum += rule.weights()[k] * v;
  }
  return sum;
}

}  // namespace widthlab
