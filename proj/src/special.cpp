#include "sigmapart/special.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "sigmapart/common.hpp"

namespace sigmapart {

namespace {

// B_{2k} / (2k)!, k = 1..12
constexpr std::array<double, 12> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
};

}  // namespace

double zeta_real(double s) {
  require(s > 1.0, "zeta_real: s must exceed 1");
  constexpr int kCut = 20;
  KahanSum acc;
  for (int n = kCut - 1; n >= 1; --n) acc += std::pow(static_cast<double>(n), -s);
  const double N = kCut;
  acc += std::pow(N, 1.0 - s) / (s - 1.0);
  acc += 0.5 * std::pow(N, -s);
  // rising factorial s (s+1) ... (s+2k-2) times N^{-s-2k+1}
  double rising = s;
  double power = std::pow(N, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    acc += kBernoulliOverFactorial[k] * rising * power;
    rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    power /= N * N;
  }
  return acc.value();
}

double gamma_real(double s) {
  require(s > 0.0, "gamma_real: s must be positive");
  if (s == std::floor(s) && s <= 21.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(s); ++k) f *= k;
    return f;
  }
  return std::tgamma(s);
}

double polylog_neg(double s, double u) {
  require(s > 0.0 && u > 0.0, "polylog_neg: need s > 0 and u > 0");
  // t^{s-1} u e^{-t} / (1 + u e^{-t}), written to stay finite for large t
  auto integrand = [s, u](double t) {
    if (t <= 0.0 || !std::isfinite(t)) return 0.0;
    const double w = u * std::exp(-t);
    if (w == 0.0) return 0.0;
    return std::pow(t, s - 1.0) * w / (1.0 + w);
  };
  double integral = 0.0;
  const double knee = std::max(1.0, std::log(u) + 1.0);
  if (u > 1.0) {
    // split at the Fermi edge t = log u so both pieces are smooth
    boost::math::quadrature::tanh_sinh<double> head;
    boost::math::quadrature::exp_sinh<double> tail;
    integral = head.integrate(integrand, 0.0, knee, 1e-14) +
               tail.integrate([&](double t) { return integrand(t + knee); }, 0.0,
                              std::numeric_limits<double>::infinity(), 1e-14);
  } else {
    boost::math::quadrature::exp_sinh<double> tail;
    integral = tail.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), 1e-14);
  }
  return -integral / gamma_real(s);
}

double polylog_neg_series(double s, double u) {
  require(s > 0.0 && u > 0.0 && u <= 1.0, "polylog_neg_series: need s > 0 and 0 < u <= 1");
  if (u < 0.5) {
    KahanSum acc;
    double power = 1.0;
    for (int l = 1; l < 2000; ++l) {
      power *= -u;
      const double term = power / std::pow(static_cast<double>(l), s);
      acc += term;
      if (std::fabs(term) < 1e-18 * std::fabs(acc.value())) break;
    }
    return acc.value();
  }
  return -alternating_sum(
      [s, u](int k) { return std::pow(u, k + 1) / std::pow(static_cast<double>(k + 1), s); }, 60);
}

double dirichlet_beta(double s) {
  require(s > 0.0, "dirichlet_beta: s must be positive");
  return alternating_sum([s](int k) { return std::pow(2.0 * k + 1.0, -s); }, 60);
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit) {
  require(limit <= 4'000'000'000ULL, "primes_up_to: cutoff too large");
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<std::uint32_t>> cached;
  static std::uint64_t cached_limit = 0;
  std::lock_guard<std::mutex> lock(mutex);
  if (!cached || cached_limit < limit) {
    std::vector<bool> composite(limit + 1, false);
    auto primes = std::make_shared<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes->push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    cached = primes;
    cached_limit = limit;
  }
  if (cached_limit == limit) return cached;
  auto view = std::make_shared<std::vector<std::uint32_t>>();
  for (auto p : *cached) {
    if (p > limit) break;
    view->push_back(p);
  }
  return view;
}

}  // namespace sigmapart
