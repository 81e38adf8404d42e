#include "widthlab/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace widthlab {

namespace {

double clamp_arg(double t) {
  return std::clamp(t, kPhiArgFloor, kPhiArgCeil);
}

}  // namespace

OrliczFunction::OrliczFunction(Descriptor descriptor)
    : descriptor_(std::move(descriptor)) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Power>) {
          if (!(d.p >= 1.0) || !std::isfinite(d.p)) {
            throw validation_error("OrliczFunction: power exponent must be >= 1");
          }
        } else {
          if (d.weights.empty() || d.weights.size() != d.exponents.size()) {
            throw validation_error(
                "OrliczFunction: mixture weights/exponents mismatch");
          }
          double total = 0.0;
          for (double w : d.weights) {
            if (!(w > 0.0)) {
              throw validation_error("OrliczFunction: weights must be positive");
            }
            total += w;
          }
          if (std::abs(total - 1.0) > 1e-12) {
            throw validation_error("OrliczFunction: weights must sum to 1");
          }
          for (double p : d.exponents) {
            if (!(p >= 1.0) || !std::isfinite(p)) {
              throw validation_error(
                  "OrliczFunction: mixture exponents must be >= 1");
            }
          }
        }
      },
      descriptor_);
}

OrliczFunction OrliczFunction::power(double p) {
  return OrliczFunction(Power{p});
}

OrliczFunction OrliczFunction::mixture(std::vector<double> weights,
                                       std::vector<double> exponents) {
  return OrliczFunction(Mixture{std::move(weights), std::move(exponents)});
}

std::string OrliczFunction::describe() const {
  std::ostringstream out;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Power>) {
          out << "power(p=" << d.p << ")";
        } else {
          out << "mixture(";
          for (std::size_t k = 0; k < d.weights.size(); ++k) {
            out << (k ? "," : "") << d.weights[k] << "*t^-" << d.exponents[k];
          }
          out << ")";
        }
      },
      descriptor_);
  return out.str();
}

double OrliczFunction::eval(double t) const {
  if (t < 0.0 || !std::isfinite(t)) {
    throw validation_error("phi_eval: argument must be nonnegative and finite");
  }
  t = clamp_arg(t);
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Power>) {
          return std::pow(t, -d.p);
        } else {
          double sum = 0.0;
          for (std::size_t k = 0; k < d.weights.size(); ++k) {
            sum += d.weights[k] * std::pow(t, -d.exponents[k]);
          }
          return sum;
        }
      },
      descriptor_);
}

double OrliczFunction::inverse(double y) const {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw validation_error("phi_inverse: argument must be positive and finite");
  }
  if (const auto* pw = std::get_if<Power>(&descriptor_)) {
    return std::pow(y, -1.0 / pw->p);
  }
  // Mixture: bisection on a geometrically expanded bracket. eval is
  // strictly decreasing in t on the clamp range.
  double lo = 1.0, hi = 1.0;
  if (eval(1.0) < y) {
    while (eval(lo) < y) {
      lo *= 0.5;
      if (lo < kPhiArgFloor) {
        throw numeric_error("phi_inverse: bracket left the clamp range");
      }
    }
    hi = lo * 2.0;
  } else {
    while (eval(hi) > y) {
      hi *= 2.0;
      if (hi > kPhiArgCeil) {
        throw numeric_error("phi_inverse: bracket left the clamp range");
      }
    }
    lo = hi * 0.5;
  }
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * lo; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) > y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double OrliczFunction::right_derivative_at_one() const {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Power>) {
          return -d.p;
        } else {
          return -std::inner_product(d.weights.begin(), d.weights.end(),
                                     d.exponents.begin(), 0.0);
        }
      },
      descriptor_);
}

bool OrliczFunction::strictly_convex() const {
  // t^-p is strictly convex on (0, inf) for every p >= 1; so is any
  // positive mixture.
  return true;
}

OrliczFunctionM::OrliczFunctionM(std::vector<OrliczFunction> parts,
                                 std::vector<double> coefficients)
    : parts_(std::move(parts)), coefficients_(std::move(coefficients)) {
  if (parts_.size() < 2) {
    throw validation_error("OrliczFunctionM: arity must be >= 2");
  }
  if (coefficients_.size() != parts_.size()) {
    throw validation_error("OrliczFunctionM: coefficient count mismatch");
  }
  double total = 0.0;
  for (double c : coefficients_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw validation_error("OrliczFunctionM: coefficients must be >= 0");
    }
    total += c;
  }
  if (!(total > 0.0)) {
    throw validation_error("OrliczFunctionM: coefficients all zero");
  }
}

OrliczFunctionM OrliczFunctionM::sum(std::vector<OrliczFunction> parts) {
  std::vector<double> ones(parts.size(), 1.0);
  return OrliczFunctionM(std::move(parts), std::move(ones));
}

double OrliczFunctionM::eval(const std::vector<double>& x) const {
  if (x.size() != parts_.size()) {
    throw validation_error("OrliczFunctionM: argument arity mismatch");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (coefficients_[k] > 0.0) sum += coefficients_[k] * parts_[k].eval(x[k]);
  }
  return sum;
}

PhiDiagnostics validate_phi(const OrliczFunction& f, int grid_size) {
  if (grid_size < 16) {
    throw validation_error("validate_phi: grid_size must be >= 16");
  }
  PhiDiagnostics diag;

  std::vector<double> grid(grid_size);
  const double lo = std::log(1e-6), hi = std::log(1e6);
  for (int k = 0; k < grid_size; ++k) {
    grid[k] = std::exp(lo + (hi - lo) * k / (grid_size - 1));
  }

  diag.decreasing = true;
  for (int k = 0; k + 1 < grid_size; ++k) {
    if (!(f.eval(grid[k]) > f.eval(grid[k + 1]))) diag.decreasing = false;
  }

  diag.midpoint_convex = true;
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> pick(lo, hi);
  for (int k = 0; k < grid_size; ++k) {
    const double s = std::exp(pick(gen));
    const double t = std::exp(pick(gen));
    if (f.eval(0.5 * (s + t)) > 0.5 * (f.eval(s) + f.eval(t)) + 1e-12) {
      diag.midpoint_convex = false;
    }
  }

  diag.normalized_at_one = std::abs(f.eval(1.0) - 1.0) <= 1e-12;
  diag.limits = f.eval(grid.front()) > 1e3 && f.eval(grid.back()) < 1e-3;
  return diag;
}

}  // namespace widthlab
