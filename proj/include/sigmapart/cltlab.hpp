#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sigmapart/partition.hpp"
#include "sigmapart/saddle.hpp"

namespace sigmapart {

/// Largest n for which clt_report builds an exact table by default.
inline constexpr std::size_t kDefaultCltLimit = 600;

/// Standard normal CDF through std::erfc.
double normal_cdf(double x);

/// sup_x |F(x) - Phi(x)| for the standardized lattice variable (k - mean)/sd
/// with point masses pmf[k]. A zero variance gives the one-point distance 0.5.
double ks_distance(const std::vector<double>& pmf, double mean, double sd);

struct CltRow {
  std::size_t n = 0;
  double mean_exact = 0.0;
  double var_exact = 0.0;
  double mu_saddle = 0.0;  // paper_literal
  double nu2_saddle = 0.0;
  double mu_saddle_general = 0.0;
  double nu2_saddle_general = 0.0;
  double ks_distance = 0.0;          // exact standardization; NaN when excluded
  double ks_saddle_general = 0.0;    // standardized by the general-mode mu, nu2
  double ks_signed = 0.0;            // same as ks_distance but computed on signed rows too
  std::size_t negativity_count = 0;
  double negative_mass = 0.0;        // sum of |pmf[k]| over negative k
  bool degenerate = false;           // exact variance is zero
  bool excluded = false;
  std::string reason;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the log-log residuals
  std::size_t points = 0;
};

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct CltReport {
  int r = 0;
  std::vector<std::size_t> n_list;
  std::vector<CltRow> rows;
  std::size_t excluded_count = 0;
  double exclusion_rate = 0.0;
  /// ks over included rows is non-increasing up to a 10% slack
  bool ks_trend_ok = true;
  std::size_t ks_trend_points = 0;
  LinearFit exponent_fit_mean;  // general-mode saddle
  LinearFit exponent_fit_var;
};

/// Exact distributions against the Gaussian limit for each n (table size max n).
CltReport clt_report(int r, const std::vector<std::size_t>& n_list,
                     std::size_t limit = kDefaultCltLimit);
/// Same, reusing an already built table.
CltReport clt_report(const PartitionTable& table, const std::vector<std::size_t>& n_list);

struct MgfPoint {
  double theta = 0.0;
  double m_exact = 0.0;
  double gauss_target = 0.0;
  double rel_deviation = 0.0;
};

struct MgfProfile {
  std::size_t n = 0;
  int r = 0;
  bool blocked = false;  // row has negative coefficients; values are diagnostic only
  std::string reason;
  std::vector<MgfPoint> points;
};

MgfProfile mgf_profile(const PartitionTable& table, std::size_t n, const std::vector<double>& theta_grid);

struct TailRecord {
  double x = 0.0;
  std::string side;    // "right" or "left"
  std::string branch;  // "gaussian" when x <= T, else "linear"
  double lhs_prob = 0.0;
  double bound = 0.0;
  bool ok = false;
};

struct TailReport {
  std::size_t n = 0;
  int r = 0;
  double T = 0.0;
  double slack = 0.5;
  bool excluded = false;  // negative coefficients in the row
  std::string reason;
  std::vector<TailRecord> records;
  /// every lhs in [0,1], every bound >= 0, branch consistent with T
  bool self_consistent = true;
  std::size_t violations = 0;
};

double tail_threshold(std::size_t n, int r);

TailReport tail_check(const PartitionTable& table, std::size_t n, const std::vector<double>& x_grid,
                      double slack = 0.5);

struct ExponentFit {
  int r = 0;
  std::vector<double> n_grid;
  double target = 0.0;  // (r+1)/(r+2)
  LinearFit mean;       // general mode
  LinearFit var;
  LinearFit mean_literal;
  LinearFit var_literal;
  /// slope of the mean fit over growing prefixes of the grid (at least 4 points)
  std::vector<double> prefix_slopes;
  bool trend_toward_target = false;
};

ExponentFit exponent_fit(int r, const std::vector<double>& n_grid);

}  // namespace sigmapart
