#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numbers>

#include "test_helpers.hpp"
#include "widthlab/sphere_quad.hpp"

using namespace widthlab;
using namespace widthlab::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("weight sums match the sphere area") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));

  const auto r2 = build_rule(2, 64);
  double sum = 0.0;
  for (double w : r2.weights()) sum += w;
  CHECK(sum == doctest::Approx(2.0 * kPi).epsilon(1e-14));

  const auto r3 = build_rule(3, 32);
  sum = 0.0;
  for (double w : r3.weights()) sum += w;
  CHECK(sum == doctest::Approx(4.0 * kPi).epsilon(1e-12));

  const auto r4 = build_rule(4, 100000, 7);
  sum = 0.0;
  for (double w : r4.weights()) sum += w;
  CHECK(sum == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("all nodes are unit norm") {
  for (const auto& rule :
       {build_rule(2, 64), build_rule(3, 16), build_rule(4, 1000, 3)}) {
    for (const auto& u : rule.nodes()) {
      CHECK(std::abs(u.coords().norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("deterministic rules are antipodally symmetric") {
  for (const auto& rule : {build_rule(2, 64), build_rule(3, 16)}) {
    std::map<std::array<long long, 3>, int> counts;
    auto key = [&](const Eigen::VectorXd& u) {
      std::array<long long, 3> k{0, 0, 0};
      for (int j = 0; j < u.size(); ++j) {
        k[j] = llround(u[j] * 1e12);
        if (k[j] == 0) k[j] = 0;  // normalize -0
      }
      return k;
    };
    for (const auto& u : rule.nodes()) counts[key(u.coords())] += 1;
    for (const auto& u : rule.nodes()) {
      CHECK(counts.count(key(-u.coords())) == 1);
    }
  }
}

TEST_CASE("constant integrand recovers the area") {
  const auto rule = build_rule(3, 32);
  CHECK(integrate(rule, [](const Direction&) { return 1.0; }) ==
        doctest::Approx(4.0 * kPi).epsilon(1e-12));
}

TEST_CASE("trapezoid is exact for cos^2") {
  const auto rule = build_rule(2, 64);
  CHECK(integrate(rule, [](const Direction& u) { return u[0] * u[0]; }) ==
        doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("second moment on the sphere is area over 3") {
  const auto rule = build_rule(3, 32);
  CHECK(integrate(rule, [](const Direction& u) { return u[2] * u[2]; }) ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-10));
}

TEST_CASE("odd integrands annihilate on deterministic rules") {
  for (const auto& rule : {build_rule(2, 64), build_rule(3, 16)}) {
    CHECK(std::abs(integrate(rule, [](const Direction& u) { return u[0]; })) <=
          1e-12);
  }
}

TEST_CASE("refinement convergence on the square width integrand") {
  // Closed form: (1/2) integral of (|cos| + |sin|)^2 = pi + 2.
  const double exact = kPi + 2.0;
  const auto sq = square();
  double prev_err = -1.0;
  for (int res : {64, 128, 256, 512, 1024}) {
    const auto rule = build_rule(2, res);
    const double value = integrate(rule, [&](const Direction& u) {
                           const double b = half_width(sq, u);
                           return b * b;
                         }) / 2.0;
    const double err = std::abs(value - exact);
    if (prev_err > 1e-13) {
      CHECK(err * 3.0 <= prev_err);
    }
    prev_err = err;
  }
}

TEST_CASE("monte carlo rules are reproducible from the seed") {
  const auto a = build_rule(4, 1000, 99);
  const auto b = build_rule(4, 1000, 99);
  const auto c = build_rule(4, 1000, 100);
  REQUIRE(a.size() == b.size());
  bool identical = true, differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.nodes()[k].coords() != b.nodes()[k].coords()) identical = false;
    if (a.nodes()[k].coords() != c.nodes()[k].coords()) differs = true;
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("monte carlo area estimate of a moment") {
  // E[u_1^2] = 1/4 on S^3; tolerance 3/sqrt(N) relative.
  const int n = 200000;
  const auto rule = build_rule(4, n, 11);
  const double value =
      integrate(rule, [](const Direction& u) { return u[0] * u[0]; });
  const double exact = sphere_area(4) / 4.0;
  CHECK(std::abs(value - exact) / exact <= 3.0 / std::sqrt(double(n)));
}

TEST_CASE("input contracts") {
  CHECK_THROWS_AS(build_rule(1, 64), validation_error);
  CHECK_THROWS_AS(build_rule(2, 8), validation_error);
  const auto rule = build_rule(2, 64);
  CHECK_THROWS_AS(
      integrate(rule,
                [](const Direction&) {
                  return std::numeric_limits<double>::quiet_NaN();
                }),
      numeric_error);
}

TEST_CASE("default resolution honors the environment override") {
  CHECK(default_resolution(2) == 65536);
  CHECK(default_resolution(3) == 64);
  CHECK(default_resolution(4) == 200000);
  setenv("WIDTHLAB_DEFAULT_RESOLUTION", "4096", 1);
  CHECK(default_resolution(2) == 4096);
  CHECK(default_resolution(3) == 4096);
  unsetenv("WIDTHLAB_DEFAULT_RESOLUTION");
  CHECK(default_resolution(3) == 64);
}
