#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sigmapart/special.hpp"

namespace sigmapart {

struct EulerOptions {
  std::uint64_t prime_cutoff = 1'000'000;
  double tolerance = 1e-8;
};

/// An Euler product over primes p <= prime_cutoff plus a bound on what the
/// omitted primes can contribute.
struct EulerProductValue {
  double value = 0.0;
  std::uint64_t prime_cutoff = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

struct SeriesValue {
  double value = 0.0;
  std::uint64_t terms_used = 0;
  double truncation_bound = 0.0;
  bool converged = true;
};

/// Local factor 1 + a(p) with |a(p)| <= scale * p^{-exponent} for every p
/// beyond the cutoff; exponent must exceed 1.
struct EulerFactor {
  std::function<double(double)> excess;
  double scale = 1.0;
  double exponent = 2.0;
};

/// Product of (1 + excess(p)) over primes up to the cutoff, accumulated in log
/// space over fixed prime blocks so the value is independent of worker count.
EulerProductValue euler_product(const EulerFactor& factor, const EulerOptions& opts);

/// |value(P) - value(2P)| for the same factor.
double euler_self_consistency(const EulerFactor& factor, const EulerOptions& opts);

/// C(r) = prod_p (1 + 1/(p^{r+1}(p-1))).
EulerFactor factor_C(int r);
EulerProductValue constant_C(int r, const EulerOptions& opts = {});

/// K_r(s) = prod_p (1 + (1-p^{-s}) / (p^{r+1}(p-1)(1-p^{-(s+r+1)}))), real s > -(r+1).
EulerFactor factor_K(double s, int r);
EulerProductValue euler_K(double s, int r, const EulerOptions& opts = {});

enum class D1Mode { closed, direct };

struct D1Truncation {
  std::uint64_t m_max = 2000;
  std::uint64_t n_max = 20000;
};

/// D_1(s, r) = sum_m mu(m)/(phi(m) m^{r+1}) sum_n c_m(n)/n^s.
/// closed: zeta(s) K_r(s) / zeta(s+r+1). direct: the truncated double sum.
SeriesValue D1(double s, int r, D1Mode mode, const D1Truncation& trunc = {},
               const EulerOptions& opts = {});

struct ErCprime {
  EulerProductValue E;
  EulerProductValue Cprime;
};

EulerFactor factor_E(double sigma, int r);
EulerFactor factor_Cprime(int r);

/// E_r(sigma) and C'(r); sigma > -2r/3.
ErCprime E_r_and_Cprime(double sigma, int r, const EulerOptions& opts = {});

/// Upper bound zeta(s)zeta(s+r)zeta(s+r+1)/zeta(2(s+r)) zeta(r) E_r(s) for |D_2(s, r)|.
double D2_bound(double sigma, int r, const EulerOptions& opts = {});

struct D2Direct {
  std::complex<double> value;
  double truncation_bound = 0.0;  // bound on the omitted n-tail for m <= m_max
};

/// D_2 summed directly over m <= m_max (characters enumerated) and n <= n_max.
D2Direct D2_direct(double s, int r, std::uint32_t m_max, std::uint64_t n_max);

/// D_2(s, r; chi_4): beta quotient times the two Euler products over p = 1, 3 mod 4.
SeriesValue D2_chi4(double s, int r, const EulerOptions& opts = {});

/// The local correction B_{p,r}(s, chi(p)) with chi(p) in {-1, 0, 1}.
double B_chi(double p, double s, int r, double chi_p);

struct ShiftedSeriesResult {
  double direct = 0.0;        // sum_n sigma_r(n+1)/n^s
  double d1_part = 0.0;       // zeta(r+1) sum_i C(r,i) D_1(s-i, r)
  double residual = 0.0;      // |direct - d1_part|
  double residual_bound = 0.0;
  bool residual_bound_ok = false;
  double dsigma_direct = 0.0;  // sum_n sigma_r(n)/n^s
  double dsigma_closed = 0.0;  // zeta(s) zeta(s-r)
  std::uint64_t terms = 0;
  double truncation = 0.0;
};

ShiftedSeriesResult shifted_series_residual(double s, int r, std::uint64_t n_max = 1'000'000,
                                            const EulerOptions& opts = {});

/// zeta(r+1) n^r sum_{m<=M} c_m(n)/m^{r+1} for n = 1..n_max (index 0 unused);
/// the series converges to sigma_r(n).
std::vector<double> sigma_ramanujan_series(std::uint64_t n_max, int r, std::uint64_t M);

enum class PolylogConvention { displayed, standard };

std::string to_string(PolylogConvention c);

/// Li_s(-1) under the chosen convention:
///   standard: -(1 - 2^{1-s}) zeta(s);   displayed: -(1 - 2^{-s}) zeta(s+1).
double polylog_minus_one(double s, PolylogConvention c);

struct ConstantsRecord {
  int r = 0;
  PolylogConvention convention = PolylogConvention::standard;
  double C = 0.0;
  double Cprime = 0.0;
  double K1 = 0.0;
  double E1 = 0.0;
  double N = 0.0;
  double C_mu = 0.0;
  double C_sigma = 0.0;
  /// C_mu under this convention divided by C_mu under the standard one.
  double discrepancy_ratio = 1.0;
  /// The closed forms printed beside the mean/variance constants, evaluated
  /// as written (displayed convention only; NaN otherwise).
  double C_mu_display = 0.0;
  double C_sigma_display = 0.0;
};

double constant_N(int r, const EulerOptions& opts = {});

/// N(r), C_mu(r), C_sigma(r) in both conventions (displayed first, standard second).
std::vector<ConstantsRecord> constants_N_Cmu_Csigma(int r, const EulerOptions& opts = {});

}  // namespace sigmapart
