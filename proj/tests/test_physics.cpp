#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ddch/error.hpp"
#include "ddch/physics.hpp"

using namespace ddch;
using namespace ddch::physics;

TEST_CASE("double well") {
  CHECK(W(0.5) == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
  CHECK(W(0.0) == 0.0);
  CHECK(W(1.0) == 0.0);
  CHECK(Wp(0.0) == 0.0);
  CHECK(Wp(0.5) == 0.0);
  CHECK(Wp(1.0) == 0.0);
  CHECK(Wpp(0.0) == 1.0);
  for (double s = 0.01; s < 1.0; s += 0.01) {
    CHECK(W(s) > 0.0);
    CHECK(W(s) == doctest::Approx(W(1.0 - s)).epsilon(1e-14));
    // Central differences of W and W'.
    const double h = 1e-5;
    CHECK(Wp(s) == doctest::Approx((W(s + h) - W(s - h)) / (2 * h)).epsilon(1e-8));
    CHECK(Wpp(s) == doctest::Approx((Wp(s + h) - Wp(s - h)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("optimal profile") {
  CHECK(profile(0.0) == 0.5);
  double prev = 1.0;
  for (double z = -20.0; z <= 20.0; z += 0.25) {
    const double q = profile(z);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    CHECK(q < prev);
    prev = q;
    CHECK(q + profile(-z) == doctest::Approx(1.0).epsilon(1e-15));
  }
  // q' = -sqrt(2 W(q)), with q' from fourth-order central differences.
  for (double z = -8.0; z <= 8.0; z += 0.5) {
    const double h = 1e-3;
    const double dq = (-profile(z + 2 * h) + 8 * profile(z + h) - 8 * profile(z - h) +
                       profile(z - 2 * h)) /
                      (12 * h);
    CHECK(std::abs(dq + std::sqrt(2.0 * W(profile(z)))) < 1e-12);
    CHECK(std::abs(profile_derivative(z) + std::sqrt(2.0 * W(profile(z)))) < 1e-15);
  }
}

TEST_CASE("asymptotic constants") {
  const auto c = asymptotic_constants();
  CHECK(std::abs(std::abs(c.c_N) - 1.0 / 6.0) < 1e-8);
  CHECK(c.c_N < 0.0);
  CHECK(std::abs(c.c_W - c.c_M) < 1e-8);
  CHECK(std::abs(c.c_W * c.c_M / (c.c_N * c.c_N) - 1.0) < 1e-8);
  CHECK(std::abs(1.0 / (c.c_N * c.c_N) - mch_normalization) < 1e-6);
}

TEST_CASE("mobilities") {
  CHECK(mch_mobility(0.0) == 0.0);
  CHECK(mch_mobility(1.0) == 0.0);
  CHECK(mch_mobility_max() == doctest::Approx(2.25));
  CHECK(mch_mobility(0.5) == doctest::Approx(mch_mobility_max()));
  const double gamma = 1.0, eps = 1.0 / 64;
  double lo = 1e300;
  for (double s = -0.5; s <= 1.5; s += 1.0 / 1024) lo = std::min(lo, nmnch_mobility(s, gamma, eps));
  CHECK(lo == doctest::Approx(gamma * eps * eps).epsilon(1e-12));
  CHECK(std::isfinite(nmnch_metric(0.0, gamma, eps)));
  CHECK(nmnch_metric(0.0, gamma, eps) == doctest::Approx(1.0 / eps));

  // Clamp: values beyond [-0.5, 1.5] evaluate as the boundary.
  CHECK(mch_mobility(7.0) == mch_mobility(1.5));
  CHECK(Mobility::out_of_range(-0.6));
  CHECK_FALSE(Mobility::out_of_range(1.2));

  // g = sqrt(M) is symmetric, and with the unsmoothed mobility g(q) = -q'.
  const Mobility mob(Model::nmnch, gamma, eps);
  for (double s = -0.4; s <= 1.4; s += 0.05) CHECK(mob.g(1.0 - s) == doctest::Approx(mob.g(s)));
  for (double z = -10; z <= 10; z += 0.5) {
    const double q = profile(z);
    CHECK(std::abs(std::sqrt(2.0 * W(q)) + profile_derivative(z)) < 1e-12);
  }
}

TEST_CASE("tension decomposition") {
  auto t = decompose_tensions(1, 1, 1);
  CHECK(t.liquid == 0.5);
  CHECK(t.solid == 0.5);
  CHECK(t.vapor == 0.5);

  t = decompose_tensions(1.0, 1.0, 1.7);
  CHECK(t.liquid == doctest::Approx(0.85));
  CHECK(t.solid == doctest::Approx(0.85));
  CHECK(t.vapor == doctest::Approx(0.15));
  CHECK(t.liquid + t.vapor == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.solid + t.vapor == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.liquid + t.solid == doctest::Approx(1.7).epsilon(1e-15));

  CHECK_THROWS_AS(decompose_tensions(1, 1, 2.5), TriangleInequalityViolated);
  CHECK_THROWS_AS(decompose_tensions(1, 0, 1), ValidationError);

  // Property: recombination is the identity on triangle-valid triples.
  for (double a = 0.2; a < 2.0; a += 0.3)
    for (double b = 0.2; b < 2.0; b += 0.3)
      for (double c = 0.2; c < 2.0; c += 0.3) {
        if (a + b < c || a + c < b || b + c < a) continue;
        const auto d = decompose_tensions(a, b, c);
        CHECK(std::abs(d.liquid + d.vapor - a) <= 4e-16 * a + 1e-16);
        CHECK(std::abs(d.solid + d.vapor - b) <= 4e-16 * b + 1e-16);
        CHECK(std::abs(d.liquid + d.solid - c) <= 4e-16 * c + 1e-16);
      }

  const auto per = per_phase_tensions({1.9, 1.0, 1.0});
  const auto back = pairwise_tensions(per);
  CHECK(back[0] == doctest::Approx(1.9));
  CHECK(back[1] == doctest::Approx(1.0));
  CHECK(back[2] == doctest::Approx(1.0));
  CHECK(per_phase_tensions({1.0}) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("mobility decomposition") {
  // (nu_S, nu_L, nu_V) = (0, 2, 2) -> (nu_SL, nu_SV, nu_LV) = (0, 0, 1)
  const auto pairs = decompose_mobilities({0.0, 2.0, 2.0});
  CHECK(pairs[0] == 0.0);
  CHECK(pairs[1] == 0.0);
  CHECK(pairs[2] == 1.0);
  for (double v : decompose_mobilities({1.0, 1.0, 1.0})) CHECK(v == 0.5);
  CHECK(pair_mobility(4.0, 4.0) == 2.0);
  CHECK(pair_mobility(3.0, 0.5) <= std::min(3.0, 0.5));
  CHECK_THROWS_AS(decompose_mobilities({-1.0, 1.0}), ValidationError);
}

TEST_CASE("Young angle") {
  CHECK(young_angle(1, 1, 1) == doctest::Approx(std::numbers::pi / 2));
  CHECK(young_angle(1, 1.7, 1) == doctest::Approx(std::acos(-0.7)));
  CHECK(young_angle(1, 1.7, 1) == doctest::Approx(2.3462).epsilon(1e-4));
  CHECK_THROWS_AS(young_angle(2.1, 1, 1), NoWettingEquilibrium);
}
