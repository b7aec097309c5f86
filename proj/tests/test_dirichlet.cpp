#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "sigmapart/common.hpp"
#include "sigmapart/dirichlet.hpp"
#include "sigmapart/special.hpp"

using namespace sigmapart;

TEST_CASE("special functions") {
  const double pi = std::numbers::pi;
  CHECK(zeta_real(2) == doctest::Approx(pi * pi / 6).epsilon(1e-14));
  CHECK(zeta_real(3) == doctest::Approx(1.2020569031595942).epsilon(1e-14));
  CHECK(zeta_real(1.5) == doctest::Approx(2.6123753486854883).epsilon(1e-13));
  CHECK(gamma_real(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(polylog_neg(1, 1) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(polylog_neg(2, 1) == doctest::Approx(-pi * pi / 12).epsilon(1e-12));
  CHECK(polylog_neg(3, 0.5) == doctest::Approx(polylog_neg_series(3, 0.5)).epsilon(1e-12));
  // Catalan's constant
  CHECK(dirichlet_beta(2) == doctest::Approx(0.915965594177219).epsilon(1e-13));
  CHECK(dirichlet_beta(1) == doctest::Approx(pi / 4).epsilon(1e-13));
  CHECK_THROWS_AS(zeta_real(1.0), ConfigError);
}

TEST_CASE("constant C(1)") {
  const auto C = constant_C(1);
  CHECK(std::fabs(C.value - 1.339784) < 1e-5);
  CHECK(std::fabs(zeta_real(2) * C.value - 2.20386) < 1e-4);
  CHECK(C.converged);
}

TEST_CASE("Euler products against a plain sieve product") {
  for (int r : {1, 2, 3}) {
    const auto f = factor_C(r);
    std::vector<bool> comp(200001, false);
    double logp = 0.0;
    for (std::uint32_t p = 2; p <= 200000; ++p) {
      if (comp[p]) continue;
      for (std::uint64_t q = std::uint64_t(p) * p; q <= 200000; q += p) comp[q] = true;
      logp += std::log1p(f.excess(double(p)));
    }
    // the tail beyond 2e5 is below 1e-10 for these exponents
    CHECK(constant_C(r).value == doctest::Approx(std::exp(logp)).epsilon(1e-9));
  }
}

TEST_CASE("K_r limits and self consistency") {
  for (int r : {1, 2, 3}) {
    CHECK(euler_K(0.0, r).value == 1.0);
    CHECK(std::fabs(euler_K(50.0, r).value - constant_C(r).value) < 1e-10);
    CHECK(euler_self_consistency(factor_K(2.0, r), {}) < 1e-8);
  }
}

TEST_CASE("D1 closed vs direct") {
  CHECK(std::fabs(D1(3, 2, D1Mode::closed).value - D1(3, 2, D1Mode::direct).value) < 1e-3);
  CHECK(std::fabs(D1(2, 1, D1Mode::closed).value - D1(2, 1, D1Mode::direct).value) < 1e-3);
}

TEST_CASE("sigma_r Ramanujan expansion") {
  const auto s = sigma_ramanujan_series(50, 2, 100000);
  for (std::int64_t n = 1; n <= 50; ++n) {
    const double want = double(oracle::sigma(n, 2));
    CHECK(std::fabs(s[n] - want) / want < 1e-3);
  }
}

TEST_CASE("D2 bound and direct probe") {
  CHECK(D2_bound(2, 2) > D2_bound(3, 2));
  CHECK(D2_bound(3, 2) > D2_bound(4, 2));
  const auto d = D2_direct(3, 2, 40, 40000);
  CHECK(std::abs(d.value) <= D2_bound(3, 2));
  const auto chi = D2_chi4(3, 2);
  EulerOptions more;
  more.prime_cutoff = 2'000'000;
  CHECK(std::fabs(chi.value - D2_chi4(3, 2, more).value) < 1e-8);
}

TEST_CASE("shifted series decomposition") {
  for (int r : {2, 3})
    for (double s : {5.0, 6.0, 7.0}) {
      const auto res = shifted_series_residual(s, r, 200000);
      CHECK(res.residual_bound_ok);
      // oracle: direct divisor sums
      double direct = 0.0, dsig = 0.0;
      for (std::int64_t n = 1; n <= 3000; ++n) {
        direct += double(oracle::sigma(n + 1, r)) / std::pow(double(n), s);
        dsig += double(oracle::sigma(n, r)) / std::pow(double(n), s);
      }
      // the oracle stops at 3000; sigma_r(n) < 2 n^r bounds what it leaves out
      const double tail = 1e-12 + 2.0 * std::pow(1.0 + 1.0 / 3000, r) / ((s - r - 1) * std::pow(3000.0, s - r - 1));
      CHECK(std::fabs(res.direct - direct) < tail);
      CHECK(res.dsigma_closed == doctest::Approx(zeta_real(s) * zeta_real(s - r)).epsilon(1e-12));
      CHECK(std::fabs(res.dsigma_direct - dsig) < tail);
    }
}

TEST_CASE("constants in both conventions") {
  for (int r : {2, 3, 4}) {
    const auto recs = constants_N_Cmu_Csigma(r);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].convention == PolylogConvention::displayed);
    CHECK(recs[1].convention == PolylogConvention::standard);
    CHECK(recs[1].C_mu > 0.0);
    CHECK(recs[0].N == recs[1].N);
    CHECK(std::isnan(recs[1].C_mu_display));
  }
  CHECK(polylog_minus_one(2, PolylogConvention::standard) ==
        doctest::Approx(polylog_neg(2, 1)).epsilon(1e-12));
  CHECK_THROWS_AS(constants_N_Cmu_Csigma(1), ConfigError);
}
