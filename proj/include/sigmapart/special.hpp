#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace sigmapart {

/// Riemann zeta for real s > 1 by Euler-Maclaurin summation (relative error
/// below 1e-14 across the domain).
double zeta_real(double s);

/// Gamma for s > 0. Exact factorials at small positive integers.
double gamma_real(double s);

/// Li_s(-u) for s > 0, u > 0 from the Fermi-Dirac integral
///   Li_s(-u) = -1/Gamma(s) * int_0^inf t^{s-1} / (e^t/u + 1) dt.
double polylog_neg(double s, double u);

/// Li_s(-u) from the alternating series sum (-u)^l / l^s, accelerated.
/// Only valid for 0 < u <= 1.
double polylog_neg_series(double s, double u);

/// Dirichlet beta function L(s, chi_4) for s > 0.
double dirichlet_beta(double s);

/// Sum_{k>=0} (-1)^k a(k) for a completely monotone sequence
/// (Cohen-Rodriguez Villegas-Zagier acceleration).
template <class Seq>
double alternating_sum(Seq&& a, int terms = 48);

/// Primes up to `limit`, shared and cached.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit);

// ---------------------------------------------------------------------------

template <class Seq>
double alternating_sum(Seq&& a, int terms) {
  const double n = terms;
  double d = 1.0;
  const double root = 3.0 + 2.0 * 1.4142135623730950488;
  for (int i = 0; i < terms; ++i) d *= root;
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  double s = 0.0;
  for (int k = 0; k < terms; ++k) {
    c = b - c;
    s += c * a(k);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

}  // namespace sigmapart
