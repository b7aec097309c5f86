#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "sigmapart/saddle.hpp"

using namespace sigmapart;

namespace {

// F(gamma, u) summed directly from divisor sums
double F_direct(double g, double u, int r) {
  double s = 0.0;
  for (std::int64_t k = 1; k * g < 60.0; ++k)
    s += double(oracle::sigma(k + 1, r) - oracle::sigma(k, r)) * std::log1p(u * std::exp(-g * double(k)));
  return s;
}

}  // namespace

TEST_CASE("F against the direct sum") {
  for (int r : {2, 3})
    for (double g : {0.2, 0.5})
      CHECK(F_partial(g, 1.0, r, {0, 0}) == doctest::Approx(F_direct(g, 1.0, r)).epsilon(1e-10));
  CHECK(std::fabs(F_partial(0.1, 1e-12, 2, {0, 0})) < 1e-8);
}

TEST_CASE("request table") {
  const auto reqs = all_requests();
  CHECK(reqs.size() == 14);
  for (const auto& d : reqs) CHECK(valid_request(d));
  CHECK_FALSE(valid_request({4, 1}));
  CHECK_FALSE(valid_request({0, 4}));
  CHECK_THROWS_AS(F_partial(0.1, 1.0, 2, {5, 0}), ConfigError);
}

TEST_CASE("partials against finite differences of F") {
  // first and second derivatives from F itself
  const double g = 0.1, u = 1.0;
  const double hu = 1e-4, hg = 1e-4;
  const double Fu = (F_partial(g, u + hu, 2, {0, 0}) - F_partial(g, u - hu, 2, {0, 0})) / (2 * hu);
  CHECK(F_partial(g, u, 2, {0, 1}) == doctest::Approx(Fu).epsilon(1e-6));
  const double Fgg = (F_partial(g + hg, u, 2, {0, 0}) - 2 * F_partial(g, u, 2, {0, 0}) +
                      F_partial(g - hg, u, 2, {0, 0})) / (hg * hg);
  CHECK(F_partial(g, u, 2, {2, 0}) == doctest::Approx(Fgg).epsilon(1e-5));

  double worst = 0.0;
  for (int r : {2, 3})
    for (double gg : {0.05, 0.1})
      for (double uu : {0.5, 1.0, 1.5})
        for (const auto& d : all_requests()) {
          if (d.j_gamma + d.j_u == 0) continue;
          DerivativeRequest lo = d;
          double fd;
          if (d.j_gamma > 0) {
            --lo.j_gamma;
            const double h = 1e-4 * gg;
            fd = (F_partial(gg + h, uu, r, lo) - F_partial(gg - h, uu, r, lo)) / (2 * h);
          } else {
            --lo.j_u;
            const double h = 1e-4 * uu;
            fd = (F_partial(gg, uu + h, r, lo) - F_partial(gg, uu - h, r, lo)) / (2 * h);
          }
          worst = std::max(worst, std::fabs(F_partial(gg, uu, r, d) - fd) / std::fabs(fd));
        }
  CHECK(worst < 1e-5);
}

TEST_CASE("saddle solves") {
  const auto lit = solve_saddle(1, 1.0, 2, SaddleMode::paper_literal);
  double s = 0.0;
  for (int k = 1; k < 100000; ++k) s += k / (std::exp(lit.tau * k) + 1.0);
  CHECK(std::fabs(s - 1.0) < 1e-12);

  const auto gen = solve_saddle(100, 1.0, 2, SaddleMode::general);
  CHECK(std::fabs(-F_partial(gen.tau, 1.0, 2, {1, 0}) - 100.0) < 1e-7);
  CHECK(gen.B2 > 0.0);
  CHECK(gen.theta_n == std::pow(gen.tau, 1.0 + 6.0 / 7.0));

  double prev = 1e9;
  for (double n : {50.0, 100.0, 200.0, 400.0}) {
    const double t = solve_saddle(n, 1.0, 2, SaddleMode::general).tau;
    CHECK(t < prev);
    prev = t;
  }
  for (int r : {2, 3})
    for (auto mode : {SaddleMode::general, SaddleMode::paper_literal})
      for (double n : {1.0, 10.0, 100.0, 1000.0}) {
        const auto sp = solve_saddle(n, 1.0, r, mode);
        CHECK(sp.residual < 1e-9 * std::max(1.0, n));
        SaddleOptions o;
        o.initial_scale = sp.tau * 3.0;
        CHECK(std::fabs(solve_saddle(n, 1.0, r, mode, o).tau - sp.tau) <= 1e-10 * sp.tau);
      }
  CHECK(parse_saddle_mode("paper_literal") == SaddleMode::paper_literal);
  CHECK_THROWS_AS(parse_saddle_mode("other"), ConfigError);
  CHECK_THROWS_AS(solve_saddle(0.5, 1.0, 2, SaddleMode::general), ConfigError);
}

TEST_CASE("saddle mean and variance") {
  const auto mv = mean_variance_saddle(200, 2, SaddleMode::general);
  CHECK(mv.mu > 0.0);
  CHECK(mv.nu2 > 0.0);
  CHECK(mv.mu == doctest::Approx(F_partial(mv.tau, 1.0, 2, {0, 1})).epsilon(1e-12));
  const double target = std::pow(2.0, 0.75);
  for (double n : {100.0, 200.0, 400.0, 800.0}) {
    const double ratio = mean_variance_saddle(2 * n, 2, SaddleMode::general).mu /
                         mean_variance_saddle(n, 2, SaddleMode::general).mu;
    CHECK(std::fabs(ratio / target - 1.0) < 0.15);
  }
}

TEST_CASE("Mellin leading order") {
  for (int r : {2, 3})
    for (int j : {0, 1}) {
      const auto m = mellin_ratio_check(j, {0.1, 0.05, 0.02}, 1.0, r);
      CHECK(std::fabs(m.ratios.back() - 1.0) < 0.05);
      CHECK(m.monotone);
    }
  // h_{2,0} against a direct double sum
  double direct = 0.0;
  const double g = 0.3;
  for (std::int64_t n = 1; n * g < 60; ++n)
    for (std::int64_t l = 1; l * n * g < 60; ++l)
      direct += double(oracle::sigma(n, 2)) * std::pow(-1.0, double(l)) / double(l) * std::exp(-double(n * l) * g);
  CHECK(h2_sum(0, g, 1.0, 2) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("h1 probe scaling") {
  for (int j : {0, 1}) {
    const auto a = h1_boundedness_probe(j, 0.05, 1.0, 2);
    const auto b = h1_boundedness_probe(j, 0.025, 1.0, 2);
    CHECK(a.ok);
    CHECK(std::fabs(b.value / a.value / std::pow(2.0, 3 + j) - 1.0) < 0.2);
  }
}

TEST_CASE("minor arc") {
  CHECK(minor_arc_ratio(0.05, 0.0, 1.0, 2) == 1.0);
  CHECK(minor_arc_ratio(0.5, std::numbers::pi, 1.0, 2) < 1.0);
  CHECK(minor_arc_log_ratio(0.05, std::numbers::pi, 1.0, 2) < 0.0);
  const double a = minor_arc_log_ratio(0.1, std::numbers::pi, 1.0, 2);
  const double b = minor_arc_log_ratio(0.05, std::numbers::pi, 1.0, 2);
  const double c = minor_arc_log_ratio(0.02, std::numbers::pi, 1.0, 2);
  CHECK(b < a);
  CHECK(c < b);
  CHECK_THROWS_AS(minor_arc_ratio(0.1, 4.0, 1.0, 2), ConfigError);
}

TEST_CASE("Li-Chen probe") {
  const auto z = lichen_probe(2, 0.1, 0.0);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs_shape == 0.0);
  const auto p = lichen_probe(2, 0.1, std::numbers::pi);
  CHECK(p.lhs > 0.0);
  CHECK(p.rhs_shape > 0.0);
  // closed form: sum n e^{-n xi}(1 - cos n y)
  double direct = 0.0;
  for (int n = 1; n < 2000; ++n) direct += n * std::exp(-0.1 * n) * (1 - std::cos(n * std::numbers::pi));
  CHECK(p.lhs == doctest::Approx(direct).epsilon(1e-10));
}
