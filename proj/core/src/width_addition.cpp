#include "widthlab/width_addition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace widthlab {

namespace {

double terms_value(const std::vector<LambdaTerm>& terms, double lambda) {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.coefficient > 0.0) {
      sum += t.coefficient * t.phi.eval(t.width / lambda);
    }
  }
  return sum;
}

[[noreturn]] void solver_failure(const std::vector<LambdaTerm>& terms,
                                 const char* reason) {
  std::ostringstream msg;
  msg << "solve_lambda: " << reason << "; terms:";
  for (const auto& t : terms) {
    msg << " (" << t.phi.describe() << ", c=" << t.coefficient
        << ", b=" << t.width << ")";
  }
  throw numeric_error(msg.str());
}

void check_dims(const std::vector<WidthProfile>& operands) {
  for (const auto& op : operands) {
    if (op.dim() != operands.front().dim()) {
      throw validation_error("width addition: operand dimension mismatch");
    }
  }
}

}  // namespace

double solve_lambda(const std::vector<LambdaTerm>& terms) {
  if (terms.empty()) throw validation_error("solve_lambda: no terms");
  double b_min = std::numeric_limits<double>::infinity();
  double b_max = 0.0;
  double c_total = 0.0;
  for (const auto& t : terms) {
    if (!(t.coefficient >= 0.0)) {
      throw validation_error("solve_lambda: negative coefficient");
    }
    if (!(t.width >= kMinWidth)) {
      throw validation_error("solve_lambda: width below the degeneracy floor");
    }
    c_total += t.coefficient;
    if (t.coefficient > 0.0) {
      b_min = std::min(b_min, t.width);
      b_max = std::max(b_max, t.width);
    }
  }
  if (!(c_total > 0.0)) {
    throw validation_error("solve_lambda: all coefficients zero");
  }

  // sum_j c_j phi_j(b_j/lambda) is strictly increasing in lambda (each
  // b_j/lambda decreases, each phi_j decreases), so the root of = 1 is
  // unique once bracketed.
  double lo = b_min * 1e-6;
  double hi = b_max * 1e6;
  int budget = 64;
  while (terms_value(terms, lo) >= 1.0) {
    lo *= 0.25;
    if (--budget == 0 || lo < 1e-300) {
      solver_failure(terms, "no sign change below the bracket");
    }
  }
  budget = 64;
  while (terms_value(terms, hi) <= 1.0) {
    hi *= 4.0;
    if (--budget == 0 || hi > 1e300) {
      solver_failure(terms, "no sign change above the bracket");
    }
  }

  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * lo; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (terms_value(terms, mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

WidthProfile orlicz_width_sum(const OrliczFunctionM& phi,
                              const std::vector<WidthProfile>& operands) {
  if (operands.size() < 2) {
    throw validation_error("orlicz_width_sum: need at least 2 operands");
  }
  if (static_cast<int>(operands.size()) != phi.arity()) {
    throw validation_error("orlicz_width_sum: operand count must match arity");
  }
  check_dims(operands);
  const int dim = operands.front().dim();
  auto ops = std::make_shared<std::vector<WidthProfile>>(operands);
  auto fn = std::make_shared<OrliczFunctionM>(phi);
  return WidthProfile(
      dim, "orlicz-sum",
      [ops, fn](const Direction& u) {
        std::vector<LambdaTerm> terms;
        terms.reserve(ops->size());
        for (std::size_t j = 0; j < ops->size(); ++j) {
          terms.push_back({fn->parts()[j], fn->coefficients()[j],
                           (*ops)[j](u)});
        }
        return solve_lambda(terms);
      },
      /*memoize=*/true);
}

WidthProfile orlicz_linear_combination(const OrliczFunction& phi1,
                                       const OrliczFunction& phi2,
                                       const WidthProfile& k,
                                       const WidthProfile& l, double alpha,
                                       double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(alpha + beta > 0.0)) {
    throw validation_error(
        "orlicz_linear_combination: need alpha, beta >= 0, not both zero");
  }
  if (k.dim() != l.dim()) {
    throw validation_error("orlicz_linear_combination: dimension mismatch");
  }
  // Identity property: K +_phi 0.L is K. Short-circuits so the solver never
  // sees a bracket degenerate at the root.
  if (beta == 0.0 && alpha == 1.0) return k;
  if (alpha == 0.0 && beta == 1.0) return l;
  return WidthProfile(
      k.dim(), "orlicz-combination",
      [phi1, phi2, k, l, alpha, beta](const Direction& u) {
        return solve_lambda({{phi1, alpha, k(u)}, {phi2, beta, l(u)}});
      },
      /*memoize=*/true);
}

WidthProfile lp_width_sum(double p, const WidthProfile& k,
                          const WidthProfile& l) {
  if (!(p >= 1.0)) throw validation_error("lp_width_sum: p must be >= 1");
  if (k.dim() != l.dim()) {
    throw validation_error("lp_width_sum: dimension mismatch");
  }
  return WidthProfile(k.dim(), "lp-sum", [p, k, l](const Direction& u) {
    return std::pow(std::pow(k(u), -p) + std::pow(l(u), -p), -1.0 / p);
  });
}

}  // namespace widthlab
