#include <cmath>
#include <numbers>

#include "doctest.h"

#include "fklab/critical.hpp"

using namespace fklab;

TEST_SUITE("critical") {
  TEST_CASE("dual parameter") {
    CHECK(dual_parameter(0.5, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dual_parameter(0.0, 2.0) == 1.0);
    CHECK(dual_parameter(1.0, 2.0) == 0.0);
    CHECK(std::abs(dual_parameter(0.3, 2.0) - 1.4 / 1.7) < 1e-15);
    for (double q : {1.0, 1.5, 2.0, 4.0})
      for (int i = 0; i < 100; ++i) {
        const double p = (i + 0.5) / 100.0;
        const double ps = dual_parameter(p, q);
        CHECK(std::abs(dual_parameter(ps, q) - p) < 1e-14);
        CHECK(std::abs(ps * p / ((1 - ps) * (1 - p)) - q) < 1e-11 * q);
      }
  }

  TEST_CASE("self-dual point") {
    CHECK(self_dual_point(1.0) == 0.5);
    CHECK(std::abs(self_dual_point(4.0) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(self_dual_point(2.0) - 0.5857864376269050) < 1e-12);
    for (int i = 0; i <= 90; ++i) {
      const double q = 1.0 + i / 10.0;
      CHECK(std::abs(dual_parameter(self_dual_point(q), q) - self_dual_point(q)) < 1e-14);
      // damped iteration of the duality map converges to the fixed point
      double p = 0.1;
      for (int k = 0; k < 200; ++k) p = 0.5 * (p + dual_parameter(p, q));
      CHECK(std::abs(p - self_dual_point(q)) < 1e-12);
    }
  }

  TEST_CASE("triangular critical point") {
    const auto one = triangular_critical(1.0);
    CHECK(std::abs(one.y_c - 0.5320888862) < 1e-9);
    CHECK(std::abs(one.p_c - 0.3472963553) < 1e-9);
    // at q = 1 the classical value is 2 sin(pi/18)
    CHECK(std::abs(one.p_c - 2 * std::sin(std::numbers::pi / 18)) < 1e-12);
    const auto two = triangular_critical(2.0);
    CHECK(std::abs(two.y_c - (std::sqrt(3.0) - 1)) < 1e-12);
    CHECK(std::abs(two.p_c - 0.4226497308) < 1e-9);
    double prev = 0.0;
    for (int i = 0; i <= 90; ++i) {
      const double q = 1.0 + i / 10.0;
      const auto s = triangular_critical(q);
      CHECK(std::abs(s.y_c * s.y_c * s.y_c + 3 * s.y_c * s.y_c - q) <= 1e-12);
      CHECK(s.residual <= 1e-12);
      CHECK(s.p_c > prev);
      CHECK(s.p_c < 1.0);
      CHECK(std::abs(s.p_c - s.y_c / (1 + s.y_c)) < 1e-15);
      prev = s.p_c;
    }
  }

  TEST_CASE("hexagonal critical point") {
    const auto one = hexagonal_critical(1.0);
    CHECK(std::abs(one.y_c - 1.8793852416) < 1e-9);
    CHECK(std::abs(one.p_c - 0.6527036447) < 1e-9);
    for (double q : {1.0, 1.5, 2.0, 3.0, 4.0, 10.0}) {
      const auto s = hexagonal_critical(q);
      CHECK(s.y_c > std::sqrt(3 * q));
      CHECK(std::abs(s.y_c * s.y_c * s.y_c - 3 * q * s.y_c - q * q) <= 1e-12 * std::max(1.0, q * q));
      CHECK(s.residual <= 1e-12 * std::max(1.0, q * q));
      CHECK(s.p_c > 0.0);
      CHECK(s.p_c < 1.0);
    }
  }

  TEST_CASE("triangular and hexagonal points are dual") {
    for (double q : {1.0, 1.5, 2.0, 3.0, 4.0})
      CHECK(std::abs(hexagonal_critical(q).p_c - dual_parameter(triangular_critical(q).p_c, q)) < 1e-10);
  }

  TEST_CASE("star-triangle transformation") {
    for (double q : {1.0, 2.0, 3.0}) {
      const auto r = star_triangle_check(q);
      CHECK(r.max_deviation < (q == 1.0 ? 1e-12 : 1e-10));
      double st = 0.0, ss = 0.0;
      for (double x : r.triangle) st += x;
      for (double x : r.star) ss += x;
      CHECK(std::abs(st - 1.0) < 1e-12);
      CHECK(std::abs(ss - 1.0) < 1e-12);
      CHECK(std::abs(r.p_star - hexagonal_critical(q).p_c) < 1e-10);
      const auto off = star_triangle_compare(r.p_triangle + 0.1, q);
      CHECK(off.max_deviation > 1e-3);
    }
  }

  TEST_CASE("gadget laws at the extremes") {
    const PartitionLaw closed = triangle_partition_law(0.0, 2.0);
    CHECK(closed[0] == 1.0);
    const PartitionLaw open = triangle_partition_law(1.0, 2.0);
    CHECK(open[4] == 1.0);
    const PartitionLaw star_open = star_partition_law(1.0, 3.0);
    CHECK(star_open[4] == 1.0);
    // eight equally likely edge sets: one isolates all, one per pair, four join all
    const PartitionLaw half = triangle_partition_law(0.5, 1.0);
    CHECK(std::abs(half[0] - 0.125) < 1e-15);
    CHECK(std::abs(half[1] - 0.125) < 1e-15);
    CHECK(std::abs(half[4] - 0.5) < 1e-15);
  }
}
