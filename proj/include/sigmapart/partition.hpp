#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sigmapart/arith.hpp"

namespace sigmapart {

/// Coefficients p(n, k) of prod_{j<=N} (1 + u z^j)^{Delta(j)} for
/// 0 <= n <= N, 0 <= k <= K, as exact signed integers.
struct PartitionTable {
  int r = 0;
  std::size_t N = 0;
  std::size_t K = 0;
  std::vector<mpz_class> coeff;       // row-major, (N+1) x (K+1)
  std::vector<mpz_class> row_totals;  // sum over k of p(n, k)

  const mpz_class& at(std::size_t n, std::size_t k) const { return coeff[n * (K + 1) + k]; }
  mpz_class& at(std::size_t n, std::size_t k) { return coeff[n * (K + 1) + k]; }

  bool operator==(const PartitionTable& o) const {
    return r == o.r && N == o.N && K == o.K && coeff == o.coeff && row_totals == o.row_totals;
  }
};

/// Generalized binomial coefficient C(delta, m) = delta (delta-1) ... (delta-m+1) / m!.
mpz_class generalized_binomial(const mpz_class& delta, std::size_t m);

/// Rough count of big-integer multiply-adds done by build_table.
double build_cost_estimate(std::size_t N, std::size_t K);

/// Expands each factor with generalized binomials and multiplies into the
/// table in place. `factor_order` is a permutation of 1..N (default ascending).
/// K = 0 means K = N.
PartitionTable build_table(int r, std::size_t N, std::size_t K = 0,
                           const std::optional<std::vector<std::size_t>>& factor_order = {});

/// Coefficients of prod (1 + z^j)^{Delta(j)} up to z^N, computed on their own.
std::vector<mpz_class> univariate_totals(int r, std::size_t N);

struct OracleTables {
  std::optional<PartitionTable> enumeration;  // absent when some Delta(j) < 0
  PartitionTable polynomial;
  std::string enumeration_note;
};

/// Two slow references: (a) weighted multiset enumeration with Pascal-triangle
/// binomials, (b) repeated naive polynomial multiplication in reverse factor
/// order. N <= 14.
OracleTables oracle_table(int r, std::size_t N);

struct ExactDistribution {
  std::size_t n = 0;
  std::vector<mpq_class> pmf;  // index k
  mpq_class mean;
  mpq_class variance;
  std::vector<std::size_t> negativity_flags;
  bool total_positive = false;
  mpz_class total;

  bool nonnegative() const { return negativity_flags.empty() && total_positive; }
};

/// Distribution of the number of summands for weight n. Throws InvariantError
/// when p(n) = 0.
ExactDistribution exact_distribution(const PartitionTable& table, std::size_t n);

/// CSV: header "n,k,coefficient", one row per 0 <= k <= min(n, K), LF endings.
void write_table_csv(const PartitionTable& table, std::ostream& os);
/// JSON object {K, N, coefficients: [[n, k, "decimal"], ...], r, row_totals}.
std::string table_json(const PartitionTable& table);

}  // namespace sigmapart
