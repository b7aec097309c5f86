#include "sigmapart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "sigmapart/report.hpp"

namespace sigmapart {

mpz_class generalized_binomial(const mpz_class& delta, std::size_t m) {
  mpz_class c = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    c *= delta - static_cast<unsigned long>(i - 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return c;
}

double build_cost_estimate(std::size_t N, std::size_t K) {
  double cost = 0.0;
  for (std::size_t j = 1; j <= N; ++j)
    for (std::size_t m = 1; m * j <= N; ++m) {
      const double rows = static_cast<double>(N - m * j + 1);
      cost += rows * std::min<double>(static_cast<double>(K), rows / 2.0 + m);
    }
  return cost;
}

PartitionTable build_table(int r, std::size_t N, std::size_t K,
                           const std::optional<std::vector<std::size_t>>& factor_order) {
  require(r >= 1, "build_table: r must be at least 1");
  require(N >= 1, "build_table: N must be at least 1");
  if (K == 0 || K > N) K = N;

  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), std::size_t{1});
  if (factor_order) {
    std::vector<std::size_t> check = *factor_order;
    std::sort(check.begin(), check.end());
    require(check == order, "build_table: factor order must be a permutation of 1..N");
    order = *factor_order;
  }

  const GapSequence gaps = make_gap_sequence(r, N);
  PartitionTable t;
  t.r = r;
  t.N = N;
  t.K = K;
  t.coeff.assign((N + 1) * (K + 1), mpz_class(0));
  t.at(0, 0) = 1;

  // highest row already reachable, so empty rows are skipped
  std::size_t reach = 0;
  std::vector<mpz_class> binom;
  for (std::size_t j : order) {
    const mpz_class& delta = gaps.gap(j);
    if (delta == 0) continue;
    const std::size_t mmax = N / j;
    binom.assign(mmax + 1, mpz_class(0));
    binom[0] = 1;
    for (std::size_t m = 1; m <= mmax; ++m) {
      binom[m] = binom[m - 1] * (delta - static_cast<unsigned long>(m - 1));
      mpz_divexact_ui(binom[m].get_mpz_t(), binom[m].get_mpz_t(), static_cast<unsigned long>(m));
    }
    const std::size_t new_reach = std::min(N, reach + j * mmax);
    // descending n: every source row n - m j still holds the old product
    for (std::size_t n = new_reach; n >= j; --n) {
      for (std::size_t m = 1; m * j <= n && m <= K; ++m) {
        const std::size_t src_row = n - m * j;
        if (src_row > reach) continue;
        if (binom[m] == 0) break;  // C(delta, m) = 0 for every larger m too
        const std::size_t kmax = std::min(K, src_row + m);
        const mpz_srcptr c = binom[m].get_mpz_t();
        for (std::size_t k = m; k <= kmax; ++k) {
          const mpz_class& src = t.at(src_row, k - m);
          if (mpz_sgn(src.get_mpz_t()) == 0) continue;
          mpz_addmul(t.at(n, k).get_mpz_t(), c, src.get_mpz_t());
        }
      }
      if (n == j) break;
    }
    reach = new_reach;
  }

  if (K < N) {
    // columns past K are dropped, so p(n) comes from the univariate product
    t.row_totals = univariate_totals(r, N);
  } else {
    t.row_totals.assign(N + 1, mpz_class(0));
    for (std::size_t n = 0; n <= N; ++n)
      for (std::size_t k = 0; k <= K; ++k) t.row_totals[n] += t.at(n, k);
  }
  return t;
}

std::vector<mpz_class> univariate_totals(int r, std::size_t N) {
  const GapSequence gaps = make_gap_sequence(r, N);
  std::vector<mpz_class> poly(N + 1, mpz_class(0));
  poly[0] = 1;
  for (std::size_t j = 1; j <= N; ++j) {
    const mpz_class& delta = gaps.gap(j);
    if (delta == 0) continue;
    std::vector<mpz_class> binom(N / j + 1);
    for (std::size_t m = 0; m <= N / j; ++m) binom[m] = generalized_binomial(delta, m);
    for (std::size_t n = N; n >= j; --n) {
      for (std::size_t m = 1; m * j <= n; ++m) poly[n] += binom[m] * poly[n - m * j];
      if (n == j) break;
    }
  }
  return poly;
}

namespace {

PartitionTable empty_table(int r, std::size_t N) {
  PartitionTable t;
  t.r = r;
  t.N = N;
  t.K = N;
  t.coeff.assign((N + 1) * (N + 1), mpz_class(0));
  return t;
}

void fill_totals(PartitionTable& t) {
  t.row_totals.assign(t.N + 1, mpz_class(0));
  for (std::size_t n = 0; n <= t.N; ++n)
    for (std::size_t k = 0; k <= t.K; ++k) t.row_totals[n] += t.at(n, k);
}

// bivariate truncated product: a(n,k) * (1 + s u z^j) where s = +1, or the
// inverse series sum_m (-u z^j)^m when invert is set
void times_linear(PartitionTable& t, std::size_t j, bool invert) {
  const std::size_t N = t.N;
  PartitionTable out = t;
  if (!invert) {
    for (std::size_t n = j; n <= N; ++n)
      for (std::size_t k = 1; k <= N; ++k) out.at(n, k) += t.at(n - j, k - 1);
  } else {
    // out = t / (1 + u z^j): out(n,k) = t(n,k) - out(n-j,k-1)
    for (std::size_t n = 0; n <= N; ++n)
      for (std::size_t k = 0; k <= N; ++k) {
        out.at(n, k) = t.at(n, k);
        if (n >= j && k >= 1) out.at(n, k) -= out.at(n - j, k - 1);
      }
  }
  t = std::move(out);
}

}  // namespace

OracleTables oracle_table(int r, std::size_t N) {
  require(r >= 1, "oracle_table: r must be at least 1");
  require(N >= 1 && N <= 14, "oracle_table: N must lie in 1..14");
  const GapSequence gaps = make_gap_sequence(r, N);
  OracleTables out;

  // (b) one linear factor at a time, largest part first
  PartitionTable poly = empty_table(r, N);
  poly.at(0, 0) = 1;
  for (std::size_t j = N; j >= 1; --j) {
    const mpz_class& delta = gaps.gap(j);
    const bool invert = delta < 0;
    const unsigned long reps = mpz_class(abs(delta)).get_ui();
    for (unsigned long i = 0; i < reps; ++i) times_linear(poly, j, invert);
  }
  fill_totals(poly);
  out.polynomial = std::move(poly);

  // (a) multiplicity vectors (m_1..m_N), weight prod C(Delta_j, m_j)
  bool all_nonnegative = true;
  long max_delta = 0;
  for (std::size_t j = 1; j <= N; ++j) {
    if (gaps.gap(j) < 0) all_nonnegative = false;
    else max_delta = std::max(max_delta, gaps.gap(j).get_si());
  }
  if (!all_nonnegative) {
    out.enumeration_note = "enumeration skipped: some gap below N is negative";
    return out;
  }
  // Pascal triangle up to the largest gap
  std::vector<std::vector<mpz_class>> pascal(max_delta + 1);
  for (long a = 0; a <= max_delta; ++a) {
    pascal[a].assign(a + 1, mpz_class(1));
    for (long b = 1; b < a; ++b) pascal[a][b] = pascal[a - 1][b - 1] + pascal[a - 1][b];
  }
  auto choose = [&](long a, long b) -> mpz_class { return b > a ? mpz_class(0) : pascal[a][b]; };

  PartitionTable en = empty_table(r, N);
  std::function<void(std::size_t, std::size_t, std::size_t, mpz_class)> walk =
      [&](std::size_t j, std::size_t weight, std::size_t count, mpz_class w) {
        if (j > N) {
          en.at(weight, count) += w;
          return;
        }
        const long delta = gaps.gap(j).get_si();
        for (std::size_t m = 0; weight + m * j <= N; ++m) {
          const mpz_class c = choose(delta, static_cast<long>(m));
          if (c == 0) break;
          walk(j + 1, weight + m * j, count + m, w * c);
        }
      };
  walk(1, 0, 0, mpz_class(1));
  fill_totals(en);
  out.enumeration = std::move(en);
  return out;
}

ExactDistribution exact_distribution(const PartitionTable& table, std::size_t n) {
  require(n <= table.N, "exact_distribution: n exceeds the table size");
  require(n <= table.K, "exact_distribution: row n is truncated by the K cap");
  ExactDistribution d;
  d.n = n;
  d.total = table.row_totals[n];
  if (d.total == 0) throw InvariantError("exact_distribution: p(n) = 0, distribution undefined");
  d.total_positive = d.total > 0;
  const std::size_t kmax = std::min(n, table.K);
  d.pmf.resize(kmax + 1);
  mpq_class second = 0;
  d.mean = 0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    const mpz_class& c = table.at(n, k);
    if (c < 0) d.negativity_flags.push_back(k);
    d.pmf[k] = mpq_class(c, d.total);
    d.pmf[k].canonicalize();
    d.mean += d.pmf[k] * static_cast<unsigned long>(k);
    second += d.pmf[k] * static_cast<unsigned long>(k * k);
  }
  d.variance = second - d.mean * d.mean;
  return d;
}

void write_table_csv(const PartitionTable& table, std::ostream& os) {
  os << "n,k,coefficient\n";
  for (std::size_t n = 0; n <= table.N; ++n)
    for (std::size_t k = 0; k <= std::min(n, table.K); ++k)
      os << n << ',' << k << ',' << table.at(n, k).get_str() << '\n';
}

std::string table_json(const PartitionTable& table) {
  Json j;
  j["r"] = table.r;
  j["N"] = table.N;
  j["K"] = table.K;
  Json rows = Json::array();
  for (std::size_t n = 0; n <= table.N; ++n)
    for (std::size_t k = 0; k <= std::min(n, table.K); ++k)
      rows.push_back(Json::array({n, k, table.at(n, k).get_str()}));
  j["coefficients"] = std::move(rows);
  Json totals = Json::array();
  for (const auto& t : table.row_totals) totals.push_back(t.get_str());
  j["row_totals"] = std::move(totals);
  return dump_json(j);
}

}  // namespace sigmapart
