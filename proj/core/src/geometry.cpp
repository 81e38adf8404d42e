#include "widthlab/geometry.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "widthlab/sphere_quad.hpp"

namespace widthlab {

namespace {

void require_finite(const Eigen::VectorXd& x, const char* what) {
  if (!x.allFinite()) {
    throw validation_error(std::string(what) + ": non-finite coordinates");
  }
}

std::string direction_key(const Eigen::VectorXd& u) {
  return std::string(reinterpret_cast<const char*>(u.data()),
                     sizeof(double) * static_cast<std::size_t>(u.size()));
}

}  // namespace

Direction::Direction(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  require_finite(coords_, "Direction");
  if (coords_.size() < 2) {
    throw validation_error("Direction: dimension must be >= 2");
  }
  const double norm = coords_.norm();
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "Direction: norm " << norm << " too far from 1";
    throw validation_error(msg.str());
  }
  if (norm != 1.0) coords_ /= norm;
}

Direction Direction::negated() const { return Direction(-coords_); }

SupportBody::SupportBody(Variant body, int dim)
    : body_(std::move(body)), dim_(dim) {}

SupportBody SupportBody::ball(Eigen::VectorXd center, double radius) {
  require_finite(center, "Ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw validation_error("Ball: radius must be positive and finite");
  }
  const int dim = static_cast<int>(center.size());
  if (dim < 2) throw validation_error("Ball: dimension must be >= 2");
  return SupportBody(Ball{std::move(center), radius}, dim);
}

SupportBody SupportBody::unit_ball(int dim) {
  return ball(Eigen::VectorXd::Zero(dim), 1.0);
}

SupportBody SupportBody::ellipsoid(Eigen::MatrixXd shape,
                                   Eigen::VectorXd center) {
  const int dim = static_cast<int>(center.size());
  if (dim < 2) throw validation_error("Ellipsoid: dimension must be >= 2");
  if (shape.rows() != dim || shape.cols() != dim) {
    throw validation_error("Ellipsoid: shape matrix must be n x n");
  }
  if (!shape.allFinite()) {
    throw validation_error("Ellipsoid: non-finite shape matrix");
  }
  require_finite(center, "Ellipsoid center");
  if (std::abs(shape.determinant()) <= 1e-12) {
    throw validation_error("Ellipsoid: shape matrix is singular");
  }
  return SupportBody(Ellipsoid{std::move(shape), std::move(center)}, dim);
}

SupportBody SupportBody::polytope(std::vector<Eigen::VectorXd> vertices) {
  if (vertices.empty()) throw validation_error("Polytope: no vertices");
  const int dim = static_cast<int>(vertices.front().size());
  if (dim < 2) throw validation_error("Polytope: dimension must be >= 2");
  if (vertices.size() < static_cast<std::size_t>(dim) + 1) {
    throw validation_error("Polytope: need at least n+1 vertices");
  }
  for (const auto& v : vertices) {
    require_finite(v, "Polytope vertex");
    if (v.size() != dim) {
      throw validation_error("Polytope: inconsistent vertex dimensions");
    }
  }
  // Full-dimensionality (vertices spanning R^n) is reported by
  // validate_body as a degeneracy flag, not rejected here.
  return SupportBody(Polytope{std::move(vertices)}, dim);
}

double support(const SupportBody& body, const Eigen::VectorXd& x) {
  require_finite(x, "support argument");
  if (x.size() != body.dim()) {
    throw validation_error("support: argument dimension mismatch");
  }
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return b.center.dot(x) + b.radius * x.norm();
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          return b.center.dot(x) + (b.shape.transpose() * x).norm();
        } else if constexpr (std::is_same_v<T, Polytope>) {
          double best = -std::numeric_limits<double>::infinity();
          for (const auto& v : b.vertices) best = std::max(best, v.dot(x));
          return best;
        } else {
          // h(AK, x) = h(K, A^T x)
          return support(*b.inner, b.matrix.transpose() * x);
        }
      },
      body.body());
}

double half_width(const SupportBody& body, const Direction& u) {
  const double b =
      0.5 * (support(body, u.coords()) + support(body, -u.coords()));
  if (b < kMinWidth) {
    throw numeric_error("half_width: body degenerate in the given direction");
  }
  return b;
}

SupportBody linear_image(const SupportBody& body, const Eigen::MatrixXd& a) {
  if (a.rows() != body.dim() || a.cols() != body.dim()) {
    throw validation_error("linear_image: matrix must be n x n");
  }
  if (!a.allFinite() || std::abs(a.determinant()) <= 1e-12) {
    throw validation_error("linear_image: matrix is singular");
  }
  return SupportBody(
      LinearImage{a, std::make_shared<SupportBody>(body)}, body.dim());
}

WidthProfile::WidthProfile(int dim, std::string provenance, Evaluator eval,
                           bool memoize)
    : dim_(dim),
      provenance_(std::move(provenance)),
      eval_(std::move(eval)),
      cache_(memoize ? std::make_shared<Cache>() : nullptr) {}

WidthProfile WidthProfile::from_body(SupportBody body) {
  const int dim = body.dim();
  auto shared = std::make_shared<SupportBody>(std::move(body));
  return WidthProfile(
      dim, "body-derived",
      [shared](const Direction& u) { return half_width(*shared, u); });
}

double WidthProfile::operator()(const Direction& u) const {
  if (u.dim() != dim_) {
    throw validation_error("WidthProfile: direction dimension mismatch");
  }
  if (!cache_) return eval_(u);
  const std::string key = direction_key(u.coords());
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  const double value = eval_(u);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->values.emplace(key, value);
  return value;
}

BodyDiagnostics validate_body(const SupportBody& body,
                              const QuadratureRule& rule) {
  if (rule.dim() != body.dim()) {
    throw validation_error("validate_body: rule dimension mismatch");
  }
  BodyDiagnostics diag;
  diag.min_width = std::numeric_limits<double>::infinity();
  diag.max_width = 0.0;
  for (const auto& u : rule.nodes()) {
    const double b =
        0.5 * (support(body, u.coords()) + support(body, -u.coords()));
    diag.min_width = std::min(diag.min_width, b);
    diag.max_width = std::max(diag.max_width, b);
  }
  diag.degenerate = diag.min_width < kMinWidth;
  // Quadrature nodes can straddle a polytope's flat direction without
  // hitting it, so lower-dimensional vertex sets are caught by rank.
  if (const auto* poly = std::get_if<Polytope>(&body.body())) {
    const int n = body.dim();
    Eigen::MatrixXd span(n, static_cast<int>(poly->vertices.size()) - 1);
    for (int c = 0; c + 1 < static_cast<int>(poly->vertices.size()); ++c) {
      span.col(c) = poly->vertices[c + 1] - poly->vertices.front();
    }
    if (Eigen::FullPivLU<Eigen::MatrixXd>(span).rank() < n) {
      diag.degenerate = true;
    }
  }
  return diag;
}

std::pair<double, double> width_extrema(const WidthProfile& profile,
                                        const QuadratureRule& rule) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& u : rule.nodes()) {
    const double b = profile(u);
    lo = std::min(lo, b);
    hi = std::max(hi, b);
  }
  return {lo, hi};
}

}  // namespace widthlab
