#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "sigmapart/common.hpp"

namespace sigmapart {

/// Largest n accepted by the trial-division factorizer.
inline constexpr std::uint64_t kMaxFactorInput = 1'000'000'000'000ULL;
/// Default cap on the modulus for character enumeration.
inline constexpr std::uint32_t kDefaultCharacterLimit = 200;

using Complex = std::complex<double>;

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

/// Prime factorization by trial division. Throws BudgetError above
/// kMaxFactorInput.
std::vector<PrimePower> factorize(std::uint64_t n);

struct MultiplicativeBasics {
  int mu;             // Moebius function
  std::uint64_t phi;  // Euler totient
  int omega;          // number of distinct prime factors
};

MultiplicativeBasics multiplicative_basics(std::uint64_t n);

inline int moebius(std::uint64_t n) { return multiplicative_basics(n).mu; }
inline std::uint64_t totient(std::uint64_t n) { return multiplicative_basics(n).phi; }

/// sigma_r(n) = sum of d^r over the divisors d of n, exactly.
mpz_class sigma_r(std::uint64_t n, int r);

/// sigma_r(1..limit+1) and the signed gaps sigma_r(k+1) - sigma_r(k), k = 1..limit.
struct GapSequence {
  int r = 0;
  std::size_t limit = 0;
  std::vector<mpz_class> sigma;  // sigma[i] = sigma_r(i), index 0 unused
  std::vector<mpz_class> gaps;   // gaps[k] = Delta(k), index 0 unused

  const mpz_class& sigma_at(std::size_t n) const { return sigma.at(n); }
  const mpz_class& gap(std::size_t k) const { return gaps.at(k); }
};

GapSequence make_gap_sequence(int r, std::size_t limit);

/// Floating-point view of the same sequence for the analytic sums. Values are
/// computed exactly in 128-bit integers and rounded once.
struct GapTable {
  int r = 0;
  std::size_t limit = 0;
  std::vector<double> sigma;  // sigma[n], n = 0..limit+1
  std::vector<double> gaps;   // gaps[k], k = 0..limit
};

/// Shared read-only gap table covering at least k <= min_limit. Thread safe.
std::shared_ptr<const GapTable> gap_table(int r, std::size_t min_limit);

/// c_m(n) through mu(m/g) phi(m) / phi(m/g), g = gcd(m, n).
std::int64_t ramanujan_sum(std::uint64_t m, std::uint64_t n);

/// A Dirichlet character tabulated on residues 0..m-1.
struct DirichletCharacter {
  std::uint32_t modulus = 1;
  std::vector<Complex> values;
  bool is_principal = true;
  bool is_primitive = true;
  std::uint32_t conductor = 1;

  Complex operator()(std::uint64_t a) const { return values[a % modulus]; }
  DirichletCharacter conjugate() const;
};

/// All phi(m) characters mod m. The principal character comes first.
std::vector<DirichletCharacter> characters_mod(std::uint32_t m,
                                               std::uint32_t limit = kDefaultCharacterLimit);

/// Cached variant used by the sweeps; shares one table per modulus.
std::shared_ptr<const std::vector<DirichletCharacter>> character_table(
    std::uint32_t m, std::uint32_t limit = kDefaultCharacterLimit);

struct CharacterSums {
  Complex c_chi;        // sum over all b mod m of chi(b) e(bn/m)
  Complex c_chi_prime;  // same, restricted to gcd(b, m) = 1
  Complex tau;          // Gauss sum c_chi(1)
};

CharacterSums character_sums(const DirichletCharacter& chi, std::uint64_t n);

/// Absolute difference between c_m(n+1) and its character expansion
///   mu(m)/phi(m) c_m(n) + 1/phi(m) sum_{chi != chi_0} tau(chi) c'_{conj chi}(n).
double shifted_ramanujan_identity_residual(std::uint64_t m, std::uint64_t n,
                                           std::uint32_t limit = kDefaultCharacterLimit);

struct InducedCharacter {
  DirichletCharacter primitive;
  /// c_chi(n) == phi(m)/phi(m*) c'_{chi*}(n) for every n in one period.
  bool scale_check = false;
  double scale_residual = 0.0;
  /// tau(chi) == mu(m/m*) chi*(m/m*) tau(chi*), checked to 1e-9 (hard).
  bool gauss_relation_check = false;
};

/// Primitive character inducing a non-principal chi. Throws ConfigError for
/// principal input and InvariantError when the Gauss sum relation fails.
InducedCharacter induce_primitive(const DirichletCharacter& chi);

}  // namespace sigmapart
