#pragma once
// Slow reference implementations kept independent of the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

inline std::int64_t sigma(std::int64_t n, int r) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) {
      std::int64_t p = 1;
      for (int i = 0; i < r; ++i) p *= d;
      s += p;
    }
  return s;
}

inline std::complex<double> e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

inline double ramanujan(std::int64_t m, std::int64_t n) {
  std::complex<double> s = 0.0;
  for (std::int64_t b = 1; b <= m; ++b)
    if (std::gcd(b, m) == 1) s += e(static_cast<double>(b * n % m) / static_cast<double>(m));
  return s.real();
}

inline std::int64_t totient(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}

inline int mobius(std::int64_t n) {
  int mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  return n > 1 ? -mu : mu;
}

// C(delta, m) for signed delta, exact in int64 at the sizes used here
inline std::int64_t binom(std::int64_t delta, int m) {
  __int128 num = 1;
  for (int i = 0; i < m; ++i) num = num * (delta - i) / (i + 1);
  return static_cast<std::int64_t>(num);
}

// p(n,k) by expanding prod_j (1 + u z^j)^{Delta(j)} with int64 arithmetic
inline std::vector<std::vector<std::int64_t>> bivariate(int r, int N) {
  std::vector<std::vector<std::int64_t>> t(N + 1, std::vector<std::int64_t>(N + 1, 0));
  t[0][0] = 1;
  for (int j = 1; j <= N; ++j) {
    const std::int64_t delta = sigma(j + 1, r) - sigma(j, r);
    std::vector<std::vector<std::int64_t>> next(N + 1, std::vector<std::int64_t>(N + 1, 0));
    for (int n = 0; n <= N; ++n)
      for (int k = 0; k <= n; ++k) {
        if (t[n][k] == 0) continue;
        for (int m = 0; n + m * j <= N; ++m) next[n + m * j][k + m] += t[n][k] * binom(delta, m);
      }
    t = std::move(next);
  }
  return t;
}

}  // namespace oracle
