#include "sigmapart/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "sigmapart/arith.hpp"
#include "sigmapart/common.hpp"

namespace sigmapart {

namespace {

constexpr std::size_t kPrimeBlock = 4096;

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// sum over primes of log1p(excess(p)), one Kahan sum per fixed block, reduced
// in block order.
double log_product(const EulerFactor& factor, const std::vector<std::uint32_t>& primes,
                   std::size_t count) {
  const std::size_t blocks = (count + kPrimeBlock - 1) / kPrimeBlock;
  std::vector<double> partial(blocks, 0.0);
  auto run_block = [&](std::size_t b) {
    KahanSum acc;
    const std::size_t lo = b * kPrimeBlock;
    const std::size_t hi = std::min(count, lo + kPrimeBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      const double a = factor.excess(static_cast<double>(primes[i]));
      if (!(a > -1.0)) throw InvariantError("euler_product: local factor is not positive");
      acc += std::log1p(a);
    }
    partial[b] = acc.value();
  };
  const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t b = w; b < blocks; b += workers) run_block(b);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  KahanSum total;
  for (double v : partial) total += v;
  return total.value();
}

}  // namespace

EulerProductValue euler_product(const EulerFactor& factor, const EulerOptions& opts) {
  require(opts.prime_cutoff >= 2, "euler_product: prime cutoff must be at least 2");
  require(factor.exponent > 1.0, "euler_product: decay exponent must exceed 1");
  const auto primes = primes_up_to(opts.prime_cutoff);
  const double logv = log_product(factor, *primes, primes->size());

  EulerProductValue out;
  out.value = std::exp(logv);
  out.prime_cutoff = opts.prime_cutoff;
  // sum_{n>P} c n^{-a} <= c P^{1-a}/(a-1); |log(1+x)| <= |x|/(1-|x|)
  const double P = static_cast<double>(opts.prime_cutoff);
  const double head = factor.scale * std::pow(P, -factor.exponent);
  double log_tail = factor.scale * std::pow(P, 1.0 - factor.exponent) / (factor.exponent - 1.0);
  if (head < 1.0) log_tail /= (1.0 - head);
  out.tail_estimate = std::fabs(out.value) * std::expm1(log_tail);
  out.converged = out.tail_estimate < opts.tolerance;
  return out;
}

double euler_self_consistency(const EulerFactor& factor, const EulerOptions& opts) {
  EulerOptions doubled = opts;
  doubled.prime_cutoff = opts.prime_cutoff * 2;
  return std::fabs(euler_product(factor, opts).value - euler_product(factor, doubled).value);
}

EulerFactor factor_C(int r) {
  require(r >= 1, "constant_C: r must be at least 1");
  EulerFactor f;
  f.excess = [r](double p) { return 1.0 / (std::pow(p, r + 1) * (p - 1.0)); };
  f.scale = 2.0;
  f.exponent = r + 2.0;
  return f;
}

EulerProductValue constant_C(int r, const EulerOptions& opts) {
  return euler_product(factor_C(r), opts);
}

EulerFactor factor_K(double s, int r) {
  require(r >= 1, "euler_K: r must be at least 1");
  require(s > -(r + 1.0), "euler_K: need s + r + 1 > 0");
  EulerFactor f;
  f.excess = [s, r](double p) {
    return (1.0 - std::pow(p, -s)) /
           (std::pow(p, r + 1) * (p - 1.0) * (1.0 - std::pow(p, -(s + r + 1.0))));
  };
  // |1-p^{-s}| <= max(1, p^{-s}); 1/(p-1) <= 2/p; denominator >= 1 - 2^{-(s+r+1)}
  f.scale = 2.0 / (1.0 - std::pow(2.0, -(s + r + 1.0)));
  f.exponent = r + 2.0 + std::min(s, 0.0);
  require(f.exponent > 1.0, "euler_K: product does not converge absolutely");
  return f;
}

EulerProductValue euler_K(double s, int r, const EulerOptions& opts) {
  return euler_product(factor_K(s, r), opts);
}

SeriesValue D1(double s, int r, D1Mode mode, const D1Truncation& trunc,
               const EulerOptions& opts) {
  require(s > 1.0, "D1: s must exceed 1");
  require(r >= 1, "D1: r must be at least 1");
  SeriesValue out;
  if (mode == D1Mode::closed) {
    const auto K = euler_K(s, r, opts);
    out.value = zeta_real(s) * K.value / zeta_real(s + r + 1.0);
    out.terms_used = opts.prime_cutoff;
    out.truncation_bound = zeta_real(s) * K.tail_estimate / zeta_real(s + r + 1.0);
    out.converged = K.converged;
    return out;
  }

  require(trunc.m_max >= 1 && trunc.n_max >= 1, "D1: truncation limits must be positive");
  const std::uint64_t M = trunc.m_max;
  const std::uint64_t Nn = trunc.n_max;
  std::vector<double> inv_pow(Nn + 1, 0.0);
  for (std::uint64_t n = 1; n <= Nn; ++n) inv_pow[n] = std::pow(static_cast<double>(n), -s);

  std::vector<int> mu(M + 1);
  std::vector<std::uint64_t> phi(M + 1);
  for (std::uint64_t m = 1; m <= M; ++m) {
    const auto b = multiplicative_basics(m);
    mu[m] = b.mu;
    phi[m] = b.phi;
  }

  KahanSum total;
  std::vector<double> period;
  for (std::uint64_t m = 1; m <= M; ++m) {
    if (mu[m] == 0) continue;
    period.assign(m, 0.0);
    for (std::uint64_t a = 0; a < m; ++a) {
      const std::uint64_t g = std::gcd(m, a);  // gcd(m, 0) = m
      const std::uint64_t q = m / g;
      period[a] = static_cast<double>(mu[q]) * static_cast<double>(phi[m] / phi[q]);
    }
    KahanSum inner;
    for (std::uint64_t n = 1; n <= Nn; ++n) inner += period[n % m] * inv_pow[n];
    total += mu[m] * inner.value() / (static_cast<double>(phi[m]) * std::pow(double(m), r + 1));
  }
  out.value = total.value();
  out.terms_used = M * Nn;

  // n-tail: |c_m(n)| <= sum_{d|m} d, so the omitted part of each inner sum is
  // at most sigma_1(m) Nn^{1-s}/(s-1); m-tail: |sum_n c_m(n) n^{-s}| <= tau(m) zeta(s)
  // and tau(m) <= 2 phi(m) for squarefree m.
  KahanSum ntail;
  for (std::uint64_t m = 1; m <= M; ++m) {
    if (mu[m] == 0) continue;
    double sig = 0.0;
    for (std::uint64_t d = 1; d <= m; ++d)
      if (m % d == 0) sig += static_cast<double>(d);
    ntail += sig / (static_cast<double>(phi[m]) * std::pow(double(m), r + 1));
  }
  const double n_part = ntail.value() * std::pow(double(Nn), 1.0 - s) / (s - 1.0);
  const double m_part = 2.0 * zeta_real(s) * std::pow(double(M), -r) / r;
  out.truncation_bound = n_part + m_part;
  out.converged = out.truncation_bound < opts.tolerance;
  return out;
}

EulerFactor factor_Cprime(int r) {
  require(r >= 1, "Cprime: r must be at least 1");
  EulerFactor f;
  f.excess = [r](double p) { return (1.0 - std::pow(p, -r)) / std::pow(p, r + 1); };
  f.scale = 1.0;
  f.exponent = r + 1.0;
  return f;
}

EulerFactor factor_E(double sigma, int r) {
  require(r >= 1, "E_r: r must be at least 1");
  require(sigma > -2.0 * r / 3.0, "E_r: sigma must exceed -2r/3");
  const double two_term = 1.0 - std::pow(2.0, -(sigma + r + 1.0));
  EulerFactor f;
  f.excess = [sigma, r, two_term](double p) {
    const double a = (1.0 - std::pow(p, -r)) / std::pow(p, r + 1);
    return a / (2.0 * std::pow(p, 3.0 * sigma + 2.0 * r + 1.0) * two_term);
  };
  f.scale = 1.0 / (2.0 * two_term);
  f.exponent = 3.0 * sigma + 3.0 * r + 2.0;
  return f;
}

ErCprime E_r_and_Cprime(double sigma, int r, const EulerOptions& opts) {
  return {euler_product(factor_E(sigma, r), opts), euler_product(factor_Cprime(r), opts)};
}

double D2_bound(double sigma, int r, const EulerOptions& opts) {
  require(sigma > 1.0, "D2_bound: sigma must exceed 1");
  require(r > 1, "D2_bound: r must exceed 1");
  const double E = euler_product(factor_E(sigma, r), opts).value;
  return zeta_real(sigma) * zeta_real(sigma + r) * zeta_real(sigma + r + 1.0) /
         zeta_real(2.0 * (sigma + r)) * zeta_real(r) * E;
}

D2Direct D2_direct(double s, int r, std::uint32_t m_max, std::uint64_t n_max) {
  require(s > 1.0, "D2_direct: s must exceed 1");
  require(m_max >= 1 && n_max >= 1, "D2_direct: truncation limits must be positive");
  std::vector<double> inv_pow(n_max + 1, 0.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) inv_pow[n] = std::pow(static_cast<double>(n), -s);

  std::complex<double> total = 0.0;
  double tail = 0.0;
  for (std::uint32_t m = 2; m <= m_max; ++m) {
    // residue-class sums of n^{-s}
    std::vector<double> cls(m, 0.0);
    for (std::uint64_t n = 1; n <= n_max; ++n) cls[n % m] += inv_pow[n];
    const auto table = character_table(m, std::max<std::uint32_t>(m_max, kDefaultCharacterLimit));
    const double phi = static_cast<double>(totient(m));
    std::complex<double> inner_m = 0.0;
    for (std::size_t c = 1; c < table->size(); ++c) {
      const auto& chi = (*table)[c];
      const auto conj = chi.conjugate();
      const Complex tau = character_sums(chi, 1).tau;
      std::complex<double> series = 0.0;
      for (std::uint32_t a = 0; a < m; ++a)
        series += character_sums(conj, a == 0 ? m : a).c_chi_prime * cls[a];
      inner_m += tau * series;
    }
    total += inner_m / (phi * std::pow(double(m), r + 1));
    // |tau| <= sqrt(m), |c'| <= phi(m), phi(m)-1 characters
    tail += std::sqrt(double(m)) * phi * (phi - 1.0) / (phi * std::pow(double(m), r + 1));
  }
  D2Direct out;
  out.value = total;
  out.truncation_bound = tail * std::pow(double(n_max), 1.0 - s) / (s - 1.0);
  return out;
}

double B_chi(double p, double s, int r, double chi_p) {
  // numerator sum_{k>=2} y^k (1/p - p^{-k}) with y = chi p^{-(s+r)}
  const double y = chi_p * std::pow(p, -(s + r));
  const double yp = y / p;
  const double num = y * y / (p * (1.0 - y)) - yp * yp / (1.0 - yp);
  const double den = 1.0 + chi_p * std::pow(p, -(s + r + 1.0)) - chi_p * std::pow(p, -(s + r)) - num;
  return num / den;
}

SeriesValue D2_chi4(double s, int r, const EulerOptions& opts) {
  require(s > 1.0, "D2_chi4: s must exceed 1");
  require(r > 1, "D2_chi4: r must exceed 1");
  EulerFactor f;
  f.excess = [s, r](double p) {
    const auto ip = static_cast<std::uint64_t>(p);
    if (ip % 4 == 1) {
      const double inv = 1.0 / (1.0 + std::pow(p, -(s + r + 1.0)) - std::pow(p, -(s + r)));
      return (1.0 + std::pow(p, -s)) / std::pow(p, r + 1) * inv * (1.0 - B_chi(p, s, r, 1.0));
    }
    if (ip % 4 == 3) {
      const double inv = 1.0 / (1.0 - std::pow(p, -(s + r + 1.0)) + std::pow(p, -(s + r)));
      return (1.0 - std::pow(p, -s)) / std::pow(p, r + 1) * inv * (1.0 - B_chi(p, s, r, -1.0));
    }
    return 0.0;
  };
  f.scale = 4.0;
  f.exponent = r + 1.0;
  const auto prod = euler_product(f, opts);
  const double lead = dirichlet_beta(s) * dirichlet_beta(s + r + 1.0) / dirichlet_beta(s + r);
  SeriesValue out;
  out.value = lead * prod.value;
  out.terms_used = opts.prime_cutoff;
  out.truncation_bound = std::fabs(lead) * prod.tail_estimate;
  out.converged = prod.converged;
  return out;
}

ShiftedSeriesResult shifted_series_residual(double s, int r, std::uint64_t n_max,
                                            const EulerOptions& opts) {
  require(r > 1, "shifted_series_residual: r must exceed 1");
  require(s - r > 1.0, "shifted_series_residual: need s - r > 1");
  require(n_max >= 2, "shifted_series_residual: n_max too small");
  const auto table = gap_table(r, n_max);

  ShiftedSeriesResult out;
  KahanSum shifted;
  KahanSum plain;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double w = std::pow(static_cast<double>(n), -s);
    shifted += table->sigma[n + 1] * w;
    plain += table->sigma[n] * w;
  }
  const double N = static_cast<double>(n_max);
  // sigma_r(n+1) <= zeta(r)(n+1)^r <= zeta(r)(1+1/N)^r n^r beyond N
  out.truncation = zeta_real(r) * std::pow(1.0 + 1.0 / N, r) * std::pow(N, r + 1.0 - s) / (s - r - 1.0);
  out.direct = shifted.value();
  out.terms = n_max;
  out.dsigma_direct = plain.value();
  out.dsigma_closed = zeta_real(s) * zeta_real(s - r);

  const double zr1 = zeta_real(r + 1.0);
  KahanSum d1;
  KahanSum bound;
  double euler_slack = 0.0;
  for (int i = 0; i <= r; ++i) {
    const double c = binomial(r, i);
    const auto v = D1(s - i, r, D1Mode::closed, {}, opts);
    d1 += c * v.value;
    euler_slack += c * v.truncation_bound;
    bound += c * D2_bound(s - i, r, opts);
  }
  out.d1_part = zr1 * d1.value();
  out.residual = std::fabs(out.direct - out.d1_part);
  out.residual_bound = zr1 * (bound.value() + euler_slack) + out.truncation +
                       1e-12 * std::fabs(out.direct);
  out.residual_bound_ok = out.residual <= out.residual_bound;
  return out;
}

std::vector<double> sigma_ramanujan_series(std::uint64_t n_max, int r, std::uint64_t M) {
  require(r >= 1 && n_max >= 1 && M >= 1, "sigma_ramanujan_series: bad arguments");
  // mu and phi by a linear sieve
  std::vector<int> mu(M + 1, 1);
  std::vector<std::uint64_t> phi(M + 1);
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(M + 1, false);
  phi[1] = 1;
  for (std::uint64_t i = 2; i <= M; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
      phi[i] = i - 1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > M) break;
      composite[ip] = true;
      if (i % p == 0) {
        mu[ip] = 0;
        phi[ip] = phi[i] * p;
        break;
      }
      mu[ip] = -mu[i];
      phi[ip] = phi[i] * (p - 1);
    }
  }
  std::vector<double> out(n_max + 1, 0.0);
  const double z = zeta_real(r + 1.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    KahanSum acc;
    for (std::uint64_t m = M; m >= 1; --m) {
      const std::uint64_t q = m / std::gcd(m, n);
      if (mu[q] == 0) continue;
      const double c = static_cast<double>(mu[q]) * static_cast<double>(phi[m] / phi[q]);
      acc += c / std::pow(static_cast<double>(m), r + 1);
    }
    out[n] = z * std::pow(static_cast<double>(n), r) * acc.value();
  }
  return out;
}

std::string to_string(PolylogConvention c) {
  return c == PolylogConvention::displayed ? "displayed" : "standard";
}

double polylog_minus_one(double s, PolylogConvention c) {
  if (c == PolylogConvention::standard) {
    if (s == 1.0) return -std::log(2.0);
    return -(1.0 - std::pow(2.0, 1.0 - s)) * zeta_real(s);
  }
  return -(1.0 - std::pow(2.0, -s)) * zeta_real(s + 1.0);
}

double constant_N(int r, const EulerOptions& opts) {
  require(r >= 2, "constant_N: r must be at least 2");
  const double K1 = euler_K(1.0, r, opts).value;
  const double E1 = euler_product(factor_E(1.0, r), opts).value;
  const double z1 = zeta_real(r + 1.0);
  const double z2 = zeta_real(r + 2.0);
  return std::fabs(z1 * K1 / z2 + z1 * z1 * z2 * zeta_real(r) * E1 / zeta_real(2.0 * (r + 1)) - z1);
}

std::vector<ConstantsRecord> constants_N_Cmu_Csigma(int r, const EulerOptions& opts) {
  require(r >= 2, "constants: r must be at least 2");
  ConstantsRecord base;
  base.r = r;
  base.C = constant_C(r, opts).value;
  base.Cprime = euler_product(factor_Cprime(r), opts).value;
  base.K1 = euler_K(1.0, r, opts).value;
  base.E1 = euler_product(factor_E(1.0, r), opts).value;
  base.N = constant_N(r, opts);

  auto fill = [&](PolylogConvention c) {
    ConstantsRecord rec = base;
    rec.convention = c;
    const double Lr = polylog_minus_one(r, c);
    const double Lr1 = polylog_minus_one(r + 1.0, c);
    const double g1 = gamma_real(r + 1.0);
    const double g2 = gamma_real(r + 2.0);
    const double g3 = gamma_real(r + 3.0);
    rec.C_mu = -rec.N * Lr1 * g1;
    rec.C_sigma = -rec.N * (Lr * g1 - Lr * Lr * g2 * g2 / (Lr1 * g3));
    return rec;
  };
  ConstantsRecord displayed = fill(PolylogConvention::displayed);
  ConstantsRecord standard = fill(PolylogConvention::standard);
  displayed.discrepancy_ratio = displayed.C_mu / standard.C_mu;
  standard.discrepancy_ratio = 1.0;

  // closed forms printed beside the two constants, taken literally
  const double zr = zeta_real(r);
  const double zr1 = zeta_real(r + 1.0);
  displayed.C_mu_display = base.N * (1.0 - std::pow(2.0, r + 1)) * gamma_real(r + 1.0) * zr1;
  displayed.C_sigma_display =
      base.N * zr * (1.0 - std::pow(2.0, -r)) *
      (gamma_real(r + 1.0) - gamma_real(r + 2.0) * zr / (gamma_real(r + 3.0) * zr1) *
                                 (1.0 - 1.0 / (std::pow(2.0, r + 1) - 1.0)));
  standard.C_mu_display = std::nan("");
  standard.C_sigma_display = std::nan("");
  return {displayed, standard};
}

}  // namespace sigmapart
