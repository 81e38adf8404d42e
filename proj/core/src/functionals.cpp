#include "widthlab/functionals.hpp"

#include <cmath>

namespace widthlab {

namespace {

void check_index(int i, int n, const char* who) {
  if (i < 0 || i >= n) {
    throw validation_error(std::string(who) + ": index out of range 0 <= i < n");
  }
}

void check_rule(const WidthProfile& k, const QuadratureRule& rule,
                const char* who) {
  if (k.dim() != rule.dim()) {
    throw validation_error(std::string(who) + ": rule dimension mismatch");
  }
}

}  // namespace

double width_integral(const WidthProfile& k, int i,
                      const QuadratureRule& rule) {
  const int n = k.dim();
  check_index(i, n, "width_integral");
  check_rule(k, rule, "width_integral");
  return integrate(rule, [&](const Direction& u) {
           return std::pow(k(u), n - i);
         }) / n;
}

double mixed_width_integral(const std::vector<WidthProfile>& bodies,
                            const QuadratureRule& rule) {
  if (bodies.empty()) {
    throw validation_error("mixed_width_integral: no operands");
  }
  const int n = bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n) {
    throw validation_error("mixed_width_integral: need exactly n operands");
  }
  for (const auto& b : bodies) {
    if (b.dim() != n) {
      throw validation_error("mixed_width_integral: dimension mismatch");
    }
  }
  check_rule(bodies.front(), rule, "mixed_width_integral");
  return integrate(rule, [&](const Direction& u) {
           double prod = 1.0;
           for (const auto& b : bodies) prod *= b(u);
           return prod;
         }) / n;
}

double ith_mixed_width(const WidthProfile& k, const WidthProfile& l, int i,
                       const QuadratureRule& rule) {
  const int n = k.dim();
  check_index(i, n, "ith_mixed_width");
  check_rule(k, rule, "ith_mixed_width");
  if (l.dim() != n) {
    throw validation_error("ith_mixed_width: dimension mismatch");
  }
  return integrate(rule, [&](const Direction& u) {
           return std::pow(k(u), n - i - 1) * l(u);
         }) / n;
}

double lp_mixed_width(const WidthProfile& k, const WidthProfile& l, double p,
                      int i, const QuadratureRule& rule) {
  const int n = k.dim();
  check_index(i, n, "lp_mixed_width");
  check_rule(k, rule, "lp_mixed_width");
  if (l.dim() != n) {
    throw validation_error("lp_mixed_width: dimension mismatch");
  }
  if (!(p >= 1.0)) throw validation_error("lp_mixed_width: p must be >= 1");
  return integrate(rule, [&](const Direction& u) {
           return std::pow(k(u), n - i + p) * std::pow(l(u), -p);
         }) / n;
}

double orlicz_mixed_width(const OrliczFunction& phi, const WidthProfile& k,
                          const WidthProfile& l, int i,
                          const QuadratureRule& rule) {
  const int n = k.dim();
  check_index(i, n, "orlicz_mixed_width");
  check_rule(k, rule, "orlicz_mixed_width");
  if (l.dim() != n) {
    throw validation_error("orlicz_mixed_width: dimension mismatch");
  }
  return integrate(rule, [&](const Direction& u) {
           const double bk = k(u);
           return phi.eval(l(u) / bk) * std::pow(bk, n - i);
         }) / n;
}

std::vector<double> width_measure_weights(const WidthProfile& k, int i,
                                          const QuadratureRule& rule) {
  const int n = k.dim();
  check_index(i, n, "width_measure_weights");
  check_rule(k, rule, "width_measure_weights");
  std::vector<double> density(rule.size());
  double total = 0.0;
  for (std::size_t idx = 0; idx < rule.size(); ++idx) {
    density[idx] =
        rule.weights()[idx] * std::pow(k(rule.nodes()[idx]), n - i);
    total += density[idx];
  }
  // total = n * A_i(K) computed on the same rule, so the weights sum to 1
  // at float precision.
  for (double& w : density) w /= total;
  return density;
}

}  // namespace widthlab
