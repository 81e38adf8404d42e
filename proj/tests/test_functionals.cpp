#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "test_helpers.hpp"
#include "widthlab/functionals.hpp"
#include "widthlab/verify.hpp"
#include "widthlab/width_addition.hpp"

using namespace widthlab;
using namespace widthlab::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("width integral of balls matches the closed form") {
  // A_i(r B) = r^{n-i} V_n with V_n the unit-ball volume.
  for (int dim : {2, 3}) {
    const auto rule = build_rule(dim, dim == 2 ? 4096 : 64);
    for (double r : {0.5, 1.0, 2.0}) {
      const auto ball = WidthProfile::from_body(
          SupportBody::ball(Eigen::VectorXd::Zero(dim), r));
      for (int i = 0; i < dim; ++i) {
        const double expected =
            std::pow(r, dim - i) * unit_ball_volume(dim);
        CHECK(width_integral(ball, i, rule) ==
              doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("width integral of the square against a dense trapezoid oracle") {
  // A_0 = (1/2) integral of (|cos| + |sin|)^2 = pi + 2; the oracle
  // recomputes it on a 10^7-point grid independent of build_rule.
  const int n = 10000000;
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    const double b = std::abs(std::cos(t)) + std::abs(std::sin(t));
    acc += b * b;
  }
  const double oracle = 0.5 * acc * (2.0 * kPi / n);
  CHECK(oracle == doctest::Approx(kPi + 2.0).epsilon(1e-9));

  const auto sq = WidthProfile::from_body(square());
  const double value = width_integral(sq, 0, build_rule(2, 4096));
  CHECK(value == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(value == doctest::Approx(kPi + 2.0).epsilon(1e-6));
}

TEST_CASE("ith mixed width of the square against the disk") {
  // n = 2, i = 0: (1/2) integral of (|cos| + |sin|) * 1 = 4.
  const auto rule = build_rule(2, 4096);
  const auto sq = WidthProfile::from_body(square());
  const auto disk = WidthProfile::from_body(SupportBody::unit_ball(2));
  CHECK(ith_mixed_width(sq, disk, 0, rule) ==
        doctest::Approx(4.0).epsilon(1e-6));
  // i = 1 drops the square entirely: (1/2) integral of 1 = pi.
  CHECK(ith_mixed_width(sq, disk, 1, rule) ==
        doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("collapse chains agree to machine precision") {
  EnsembleConfig config;
  config.seed = 12;
  for (int dim : {2, 3}) {
    config.dim = dim;
    const auto rule = build_rule(dim, dim == 2 ? 512 : 24);
    const auto k = WidthProfile::from_body(random_body(config, 0));
    for (int i = 0; i < dim; ++i) {
      const double base = width_integral(k, i, rule);
      CHECK(ith_mixed_width(k, k, i, rule) ==
            doctest::Approx(base).epsilon(1e-12));
      for (double p : {1.0, 2.0}) {
        CHECK(lp_mixed_width(k, k, p, i, rule) ==
              doctest::Approx(base).epsilon(1e-12));
        CHECK(orlicz_mixed_width(OrliczFunction::power(p), k, k, i, rule) ==
              doctest::Approx(base).epsilon(1e-12));
      }
    }
    const std::vector<WidthProfile> copies(dim, k);
    CHECK(mixed_width_integral(copies, rule) ==
          doctest::Approx(width_integral(k, 0, rule)).epsilon(1e-12));
  }
}

TEST_CASE("lp mixed width reduces to the ith mixed width at p via ratios") {
  // A_{-p,i}(K,L) with K = L up to scale: b_L = c b_K gives c^{-p} A_i(K).
  const auto rule = build_rule(2, 512);
  const auto sq = WidthProfile::from_body(square());
  const auto scaled = WidthProfile::from_body(
      linear_image(square(), 1.5 * Eigen::MatrixXd::Identity(2, 2)));
  for (double p : {1.0, 2.0, 3.0}) {
    for (int i : {0, 1}) {
      const double expected =
          std::pow(1.5, -p) * width_integral(sq, i, rule);
      CHECK(lp_mixed_width(sq, scaled, p, i, rule) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("homogeneity in each slot") {
  const auto rule = build_rule(2, 512);
  const auto sq = WidthProfile::from_body(square());
  const auto disk = WidthProfile::from_body(SupportBody::unit_ball(2));
  const auto sq2 = WidthProfile::from_body(
      linear_image(square(), 2.0 * Eigen::MatrixXd::Identity(2, 2)));
  // A_i(sK) = s^{n-i} A_i(K).
  for (int i : {0, 1}) {
    CHECK(width_integral(sq2, i, rule) ==
          doctest::Approx(std::pow(2.0, 2 - i) * width_integral(sq, i, rule))
              .epsilon(1e-12));
  }
  // A_i(K, sL) = s A_i(K, L).
  const auto disk2 = WidthProfile::from_body(
      SupportBody::ball(Eigen::VectorXd::Zero(2), 2.0));
  CHECK(ith_mixed_width(sq, disk2, 0, rule) ==
        doctest::Approx(2.0 * ith_mixed_width(sq, disk, 0, rule))
            .epsilon(1e-12));
}

TEST_CASE("rotation and translation invariance") {
  std::mt19937_64 gen(41);
  const auto rule = build_rule(2, 8192);
  const auto sq = square();
  const auto base = WidthProfile::from_body(sq);

  SUBCASE("translation leaves every functional unchanged") {
    Eigen::VectorXd t(2);
    t << 3.0, -1.5;
    std::vector<Eigen::VectorXd> moved;
    for (const auto& v : std::get<Polytope>(sq.body()).vertices) {
      moved.push_back(v + t);
    }
    const auto shifted =
        WidthProfile::from_body(SupportBody::polytope(moved));
    for (int i : {0, 1}) {
      CHECK(width_integral(shifted, i, rule) ==
            doctest::Approx(width_integral(base, i, rule)).epsilon(1e-13));
    }
  }

  SUBCASE("rotation preserves the width integral") {
    for (int trial = 0; trial < 3; ++trial) {
      const auto rotated =
          WidthProfile::from_body(linear_image(sq, random_rotation(gen, 2)));
      CHECK(width_integral(rotated, 0, rule) ==
            doctest::Approx(width_integral(base, 0, rule)).epsilon(1e-7));
    }
  }
}

TEST_CASE("width measure weights") {
  const auto rule = build_rule(2, 512);
  const auto sq = WidthProfile::from_body(square());
  for (int i : {0, 1}) {
    const auto weights = width_measure_weights(sq, i, rule);
    REQUIRE(weights.size() == rule.size());
    double sum = 0.0;
    for (double w : weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }

  // For i = 0 the density b^2 peaks on the diagonals where b = sqrt(2).
  const auto weights = width_measure_weights(sq, 0, rule);
  std::size_t argmax = 0;
  for (std::size_t k = 1; k < weights.size(); ++k) {
    if (weights[k] > weights[argmax]) argmax = k;
  }
  const auto& peak = rule.nodes()[argmax].coords();
  CHECK(std::abs(std::abs(peak[0]) - std::abs(peak[1])) <= 1e-9);
}

TEST_CASE("jensen consistency of the orlicz mixed width") {
  // Convexity of phi gives
  // A_{phi,i}(K,L) / A_i(K) >= phi(sum w_u b_L/b_K) on the same rule.
  EnsembleConfig config;
  config.seed = 13;
  config.dim = 2;
  const auto rule = build_rule(2, 512);
  const auto phi = OrliczFunction::mixture({0.5, 0.5}, {1.0, 3.0});
  for (std::uint64_t idx = 0; idx < 4; idx += 2) {
    const auto k = WidthProfile::from_body(random_body(config, idx));
    const auto l = WidthProfile::from_body(random_body(config, idx + 1));
    for (int i : {0, 1}) {
      const auto weights = width_measure_weights(k, i, rule);
      double mean_ratio = 0.0;
      for (std::size_t m = 0; m < rule.size(); ++m) {
        const auto& u = rule.nodes()[m];
        mean_ratio += weights[m] * l(u) / k(u);
      }
      const double lhs =
          orlicz_mixed_width(phi, k, l, i, rule) / width_integral(k, i, rule);
      CHECK(lhs >= phi.eval(mean_ratio) - 1e-10);
    }
  }
}

TEST_CASE("input contracts") {
  const auto rule2 = build_rule(2, 64);
  const auto rule3 = build_rule(3, 16);
  const auto sq = WidthProfile::from_body(square());
  const auto disk = WidthProfile::from_body(SupportBody::unit_ball(2));
  const auto ball3 = WidthProfile::from_body(SupportBody::unit_ball(3));

  CHECK_THROWS_AS(width_integral(sq, -1, rule2), validation_error);
  CHECK_THROWS_AS(width_integral(sq, 2, rule2), validation_error);
  CHECK_THROWS_AS(width_integral(sq, 0, rule3), validation_error);
  CHECK_THROWS_AS(ith_mixed_width(sq, ball3, 0, rule2), validation_error);
  CHECK_THROWS_AS(lp_mixed_width(sq, disk, 0.5, 0, rule2), validation_error);
  CHECK_THROWS_AS(mixed_width_integral({sq}, rule2), validation_error);
  CHECK_THROWS_AS(mixed_width_integral({sq, disk, disk}, rule2),
                  validation_error);
}
