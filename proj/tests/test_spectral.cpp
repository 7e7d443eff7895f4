#include <doctest.h>

#include <cmath>

#include "ddch/error.hpp"
#include "ddch/spectral.hpp"
#include "support.hpp"

using namespace ddch;
using ddch::test::two_pi;

namespace {

std::size_t mode_index(const Grid &g, std::array<int, 3> k) {
  std::size_t flat = 0;
  for (int a = 0; a < g.ndim(); ++a) {
    const int n = g.spectral_dims()[a];
    const int i = k[a] >= 0 ? k[a] : g.dim(a) + k[a];
    flat = flat * n + static_cast<std::size_t>(i);
  }
  return flat;
}

} // namespace

TEST_CASE("grid validation and frequency layout") {
  CHECK_THROWS_AS(Grid({6, 3}, {1.0, 1.0}), InvalidGrid);
  CHECK_THROWS_AS(Grid({2}, {1.0}), InvalidGrid);
  CHECK_THROWS_AS(Grid({8}, {0.0}), InvalidGrid);
  CHECK_THROWS_AS(Grid({8, 8, 8, 8}, {1, 1, 1, 1}), InvalidGrid);

  const Grid g({8, 16}, {1.0, 2.0});
  for (int a = 0; a < 2; ++a) {
    const auto &f = g.frequencies(a);
    REQUIRE(static_cast<int>(f.size()) == g.dim(a));
    CHECK(std::count(f.begin(), f.end(), 0.0) == 1);
    CHECK(*std::min_element(f.begin(), f.end()) == doctest::Approx(-g.dim(a) / 2 / g.length(a)));
    CHECK(*std::max_element(f.begin(), f.end()) ==
          doctest::Approx((g.dim(a) / 2 - 1) / g.length(a)));
  }
  CHECK(g.spectral_size() == 8u * 9u);
}

TEST_CASE("laplacian symbol values") {
  const Grid g1({16}, {1.0});
  const auto &s1 = spectral::laplacian_symbol(g1);
  CHECK(s1[0] == 0.0);
  CHECK(s1[1] == doctest::Approx(-two_pi * two_pi).epsilon(1e-14));
  for (double v : s1) CHECK(v <= 0.0);

  const Grid g2({16, 16}, {1.0, 1.0});
  const auto &s2 = spectral::laplacian_symbol(g2);
  CHECK(s2[mode_index(g2, {3, 4, 0})] == doctest::Approx(-two_pi * two_pi * 25.0).epsilon(1e-14));
  CHECK(s2[mode_index(g2, {-3, 4, 0})] == doctest::Approx(-two_pi * two_pi * 25.0).epsilon(1e-14));
}

TEST_CASE("transform round trip and Parseval") {
  for (auto dims : {std::vector<int>{32}, std::vector<int>{16, 24}, std::vector<int>{8, 8, 12}}) {
    const Grid g(dims, std::vector<double>(dims.size(), 1.0));
    Transform tr(g);
    const Field f = test::smooth_field(g, 7, 8, 3, 0.3);
    const Spectrum fh = tr.forward(f);
    const Field back = tr.inverse(fh);
    CHECK(test::max_abs_diff(f, back) <= 1e-12 * test::max_abs(f));

    // Parseval on the half-spectrum: interior planes of the last axis count twice.
    const int nlast = g.dims().back();
    const int slast = g.spectral_dims().back();
    double spec = 0.0;
    for (std::size_t i = 0; i < fh.size(); ++i) {
      const int j = static_cast<int>(i % slast);
      const double w = (j == 0 || j == nlast / 2) ? 1.0 : 2.0;
      spec += w * std::norm(fh[i]);
    }
    spec /= static_cast<double>(g.size());
    CHECK(spec == doctest::Approx(test::dot(f, f)).epsilon(1e-10));
  }
}

TEST_CASE("gradient") {
  const Grid g({64}, {1.0});
  Transform tr(g);
  const Field c(g.size(), 3.5);
  CHECK(test::max_abs(spectral::gradient(tr, c)[0]) < 1e-12);

  const Field s = g.sample([](const auto &x) { return std::sin(two_pi * x[0]); });
  const Field ds = spectral::gradient(tr, s)[0];
  const Field exact = g.sample([](const auto &x) { return two_pi * std::cos(two_pi * x[0]); });
  CHECK(test::max_abs_diff(ds, exact) < 1e-10);

  // Linearity.
  const Grid g2({32, 32}, {1.0, 1.5});
  Transform tr2(g2);
  const Field f = test::smooth_field(g2, 1);
  const Field h = test::smooth_field(g2, 2);
  Field comb(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) comb[i] = 2.0 * f[i] - 0.5 * h[i];
  const auto gf = spectral::gradient(tr2, f);
  const auto gh = spectral::gradient(tr2, h);
  const auto gc = spectral::gradient(tr2, comb);
  for (int a = 0; a < 2; ++a) {
    Field lin(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) lin[i] = 2.0 * gf[a][i] - 0.5 * gh[a][i];
    CHECK(test::max_abs_diff(lin, gc[a]) < 1e-12 * (1.0 + test::max_abs(lin)));
  }
}

TEST_CASE("divergence") {
  const Grid g({32, 32}, {1.0, 1.0});
  Transform tr(g);
  std::vector<Field> cst(2, Field(g.size(), -1.25));
  CHECK(test::max_abs(spectral::divergence(tr, cst)) < 1e-12);

  std::vector<Field> v{g.sample([](const auto &x) { return std::sin(two_pi * x[0]); }),
                       Field(g.size(), 0.0)};
  const Field d = spectral::divergence(tr, v);
  const Field exact = g.sample([](const auto &x) { return two_pi * std::cos(two_pi * x[0]); });
  CHECK(test::max_abs_diff(d, exact) < 1e-10);

  const Field f = test::smooth_field(g, 11);
  const Field dg = spectral::divergence(tr, spectral::gradient(tr, f));
  const Field lap = spectral::apply_symbol(tr, f, g.laplacian_symbol());
  CHECK(test::max_abs_diff(dg, lap) < 1e-10 * (1.0 + test::max_abs(lap)));

  const Field rnd = test::smooth_field(g, 12, 10, 6);
  std::vector<Field> w{rnd, test::smooth_field(g, 13, 10, 6)};
  CHECK(std::abs(test::mean(spectral::divergence(tr, w))) < 1e-12);
}

TEST_CASE("gradient and divergence are adjoint") {
  const Grid g({24, 32}, {1.0, 2.0});
  Transform tr(g);
  const Field f = test::smooth_field(g, 21, 8, 5);
  std::vector<Field> v{test::smooth_field(g, 22, 8, 5), test::smooth_field(g, 23, 8, 5)};
  const auto gf = spectral::gradient(tr, f);
  const double lhs = test::dot(gf[0], v[0]) + test::dot(gf[1], v[1]);
  const double rhs = -test::dot(f, spectral::divergence(tr, v));
  CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
}

namespace {

/// (I + dt c A(A - alpha/eps^2)) f in real space, with A the Laplacian.
Field forward_operator(Transform &tr, const Field &f, double dt, double c, double shift_a,
                       double alpha, double eps) {
  const auto &lap = tr.grid().laplacian_symbol();
  const Field lf = spectral::apply_symbol(tr, f, lap);
  Field inner(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) inner[i] = lf[i] - alpha / (eps * eps) * f[i];
  const Field outer = spectral::apply_symbol(tr, inner, lap);
  Field out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    out[i] = f[i] + dt * c * (outer[i] - shift_a * inner[i]);
  return out;
}

} // namespace

TEST_CASE("apply_LM") {
  const Grid g({32, 32}, {1.0, 1.0});
  Transform tr(g);
  const double eps = 1.0 / 32, dt = std::pow(eps, 4), m = 2.25, alpha = 2.0;
  const Field f = test::smooth_field(g, 31, 8, 8, 0.4);

  const RealBuffer sym = spectral::lm_symbol(g, dt, m, 0.7, alpha, eps);
  CHECK(sym[0] == 1.0);
  for (double v : sym) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }

  Spectrum fh = tr.forward(f);
  spectral::apply_LM(fh, g, dt, m, 0.0, alpha, eps);
  CHECK(test::max_abs_diff(tr.inverse(fh), f) < 1e-14);

  fh = tr.forward(f);
  spectral::apply_LM(fh, g, dt, m, 0.7, alpha, eps);
  const Field lf = tr.inverse(fh);
  CHECK(test::mean(lf) == doctest::Approx(test::mean(f)).epsilon(1e-14));
  // L_M is (I + dt m sn A(A - alpha/eps^2))^-1: re-applying the operator recovers f.
  const Field back = forward_operator(tr, lf, dt, m * 0.7, 0.0, alpha, eps);
  CHECK(test::max_abs_diff(back, f) < 1e-10);
}

TEST_CASE("apply_LNMN") {
  const Grid g({32, 32}, {1.0, 1.0});
  Transform tr(g);
  const double eps = 2.0 / 32, dt = std::pow(eps, 4), m = 1.0, alpha = 2.0,
               beta = 2.0 / (eps * eps);
  const double sn = 1.3;
  const RealBuffer sym = spectral::lnmn_symbol(g, dt, sn, m, beta, alpha, eps);
  CHECK(sym[0] == doctest::Approx(1.0 / (1.0 + dt * sn * beta * alpha / (eps * eps))));
  CHECK(sym[0] < 1.0);
  for (double v : sym) {
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }

  const Field f = test::smooth_field(g, 41, 8, 8, 0.4);
  Spectrum fh = tr.forward(f);
  spectral::apply_LNMN(fh, g, dt, 0.0, m, beta, alpha, eps);
  CHECK(test::max_abs_diff(tr.inverse(fh), f) < 1e-14);

  fh = tr.forward(f);
  spectral::apply_LNMN(fh, g, dt, sn, m, beta, alpha, eps);
  const Field lf = tr.inverse(fh);
  // (m A - beta)(A - alpha/eps^2) = m A(A - a) - beta (A - a)
  const auto &lap = g.laplacian_symbol();
  const Field l1 = spectral::apply_symbol(tr, lf, lap);
  const Field l2 = spectral::apply_symbol(tr, l1, lap);
  Field back(f.size());
  const double a = alpha / (eps * eps);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double op = m * (l2[i] - a * l1[i]) - beta * (l1[i] - a * lf[i]);
    back[i] = lf[i] + dt * sn * op;
  }
  CHECK(test::max_abs_diff(back, f) < 1e-10);
}

TEST_CASE("lambda inverse symbol") {
  const Grid g({16, 16}, {1.0, 1.0});
  const double eps = 1.0 / 16;

  SchemeParams nm = SchemeParams::defaults(Model::nmnch, eps);
  const RealBuffer inv = spectral::lambda_inverse_symbol(g, nm, {{1.0, 1.0}});
  const RealBuffer l = spectral::lnmn_symbol(g, nm.dt, 1.0, nm.m, nm.beta, nm.alpha, eps);
  CHECK(inv[0] == doctest::Approx(-1.0 / (nm.beta * l[0])).epsilon(1e-14));

  SchemeParams mc = SchemeParams::defaults(Model::mch, eps);
  const std::vector<PhaseCoefficients> phases{{0.5, 1.0}, {1.0, 2.0}, {0.25, 0.0}};
  const RealBuffer inv_m = spectral::lambda_inverse_symbol(g, mc, phases);
  CHECK(inv_m[0] == 0.0);
  const auto &s = g.laplacian_symbol();
  for (std::size_t i = 1; i < inv_m.size(); ++i) {
    double fwd = 0.0;
    for (const auto &p : phases) {
      if (p.nu == 0.0) continue;
      fwd += p.nu * spectral::lm_symbol(g, mc.dt, mc.m, p.sigma * p.nu, mc.alpha, eps)[i] * s[i];
    }
    CHECK(std::abs(inv_m[i] * fwd - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(spectral::lambda_inverse_symbol(g, mc, {{1.0, 0.0}, {1.0, 0.0}}),
                  AllMobilitiesZero);
}
