#include <cmath>

#include "doctest.h"
#include "sigmapart/cltlab.hpp"

using namespace sigmapart;

TEST_CASE("normal cdf and erf") {
  double series = 0.0, term = 1.0;
  for (int k = 0; k < 40; ++k) {
    series += term / (2 * k + 1);
    term *= -1.0 / (k + 1);
  }
  series *= 2.0 / std::sqrt(M_PI);
  CHECK(std::fabs(std::erf(1.0) - series) / series < 1e-10);
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-14));
  CHECK(normal_cdf(-8.0) > 0.0);
}

TEST_CASE("KS distance") {
  // one-point mass at the mean: jump from 0 to 1 where Phi = 1/2
  CHECK(ks_distance({0.0, 1.0}, 1.0, 0.0) == 0.5);
  // symmetric two-point law at -1, +1 standardized: sup is at the atoms
  const double d = ks_distance({0.5, 0.0, 0.5}, 1.0, 1.0);
  CHECK(d == doctest::Approx(std::max(normal_cdf(-1.0), 0.5 - normal_cdf(-1.0))).epsilon(1e-14));
}

TEST_CASE("log-log fit") {
  const auto f = fit_loglog({1, 2, 4, 8}, {3, 3 * std::pow(2, 0.75), 3 * std::pow(4, 0.75), 3 * std::pow(8, 0.75)});
  CHECK(f.slope == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK_THROWS_AS(fit_loglog({1}, {1}), ConfigError);
}

TEST_CASE("clt report") {
  const auto one = clt_report(2, {1});
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].degenerate);
  CHECK(one.rows[0].ks_distance == 0.5);

  const auto rep = clt_report(2, {2, 5, 9, 15});
  CHECK(rep.excluded_count == 0);
  CHECK(rep.ks_trend_ok);
  for (const auto& row : rep.rows) {
    CHECK(row.ks_distance >= 0.0);
    CHECK(row.ks_distance <= 1.0);
  }
  const auto big = clt_report(2, {50, 100, 200, 400});
  CHECK(big.excluded_count == 4);
  for (const auto& row : big.rows) {
    CHECK(std::isnan(row.ks_distance));
    CHECK(row.negativity_count > 0);
  }
  CHECK_THROWS_AS(clt_report(2, {100, 50}), ConfigError);
  CHECK_THROWS_AS(clt_report(2, {700}), ConfigError);
}

TEST_CASE("mgf profile") {
  const auto t = build_table(2, 400);
  const auto p = mgf_profile(t, 15, {-0.5, 0.0, 0.5});
  CHECK_FALSE(p.blocked);
  CHECK(p.points[1].m_exact == 1.0);
  const auto a = mgf_profile(t, 100, {0.5});
  const auto b = mgf_profile(t, 400, {0.5});
  CHECK(a.blocked);
  CHECK(b.points[0].rel_deviation < a.points[0].rel_deviation);
  CHECK_THROWS_AS(mgf_profile(t, 15, {3.0}), ConfigError);
}

TEST_CASE("tail check") {
  const auto t = build_table(2, 400);
  const auto ok = tail_check(t, 15, {0.0, 1.0, 2.0, 1e3});
  CHECK_FALSE(ok.excluded);
  CHECK(ok.self_consistent);
  for (const auto& rec : ok.records) {
    CHECK(rec.lhs_prob >= 0.0);
    CHECK(rec.lhs_prob <= 1.0);
    if (rec.x == 0.0) CHECK(rec.ok);
    if (rec.x == 1e3) CHECK(rec.lhs_prob == 0.0);
  }
  const double T = tail_threshold(400, 2);
  CHECK(T == doctest::Approx(std::pow(400.0, 3.0 / 24.0) / std::log(400.0)).epsilon(1e-14));
  const auto big = tail_check(t, 400, {1.0, 2.0}, 0.5);
  CHECK(big.excluded);
  CHECK(big.self_consistent);
  for (const auto& rec : big.records) {
    CHECK(rec.branch == (rec.x <= T ? "gaussian" : "linear"));
    const double base = rec.x <= T ? std::exp(-rec.x * rec.x / 2) : std::exp(-T * rec.x / 2);
    CHECK(rec.bound == doctest::Approx(1.5 * base).epsilon(1e-14));
  }
}

TEST_CASE("exponent fit") {
  const auto f = exponent_fit(2, {100, 200, 400, 800, 1600});
  CHECK(f.target == 0.75);
  CHECK(std::fabs(f.mean.slope - 0.75) < 0.1);
  CHECK(f.prefix_slopes.size() == 2);
  CHECK_THROWS_AS(exponent_fit(2, {100, 200, 400}), ConfigError);
}
