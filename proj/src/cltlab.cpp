#include "sigmapart/cltlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sigmapart {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> pmf_doubles(const ExactDistribution& d) {
  std::vector<double> out(d.pmf.size());
  for (std::size_t k = 0; k < d.pmf.size(); ++k) out[k] = d.pmf[k].get_d();
  return out;
}

double negative_mass(const std::vector<double>& pmf) {
  double m = 0.0;
  for (double p : pmf)
    if (p < 0.0) m -= p;
  return m;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance(const std::vector<double>& pmf, double mean, double sd) {
  if (!(sd > 0.0)) return 0.5;
  double cum = 0.0;
  double sup = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double phi = normal_cdf((static_cast<double>(k) - mean) / sd);
    sup = std::max(sup, std::fabs(cum - phi));
    cum += pmf[k];
    sup = std::max(sup, std::fabs(cum - phi));
  }
  return sup;
}

LinearFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "fit_loglog: need at least two points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > 0.0 && y[i] > 0.0, "fit_loglog: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  LinearFit f;
  f.points = x.size();
  f.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / m;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = ly[i] - (f.intercept + f.slope * lx[i]);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / m);
  return f;
}

CltReport clt_report(int r, const std::vector<std::size_t>& n_list, std::size_t limit) {
  require(!n_list.empty(), "clt_report: empty n list");
  const std::size_t top = *std::max_element(n_list.begin(), n_list.end());
  require(top <= limit, "clt_report: largest n exceeds the table limit");
  return clt_report(build_table(r, top), n_list);
}

CltReport clt_report(const PartitionTable& table, const std::vector<std::size_t>& n_list) {
  require(!n_list.empty(), "clt_report: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    require(n_list[i] >= 1 && n_list[i] <= table.N, "clt_report: n outside the table");
    if (i) require(n_list[i] > n_list[i - 1], "clt_report: n list must be increasing");
  }
  CltReport rep;
  rep.r = table.r;
  rep.n_list = n_list;
  std::vector<double> fit_n, fit_mu, fit_nu;
  for (std::size_t n : n_list) {
    CltRow row;
    row.n = n;
    if (table.row_totals[n] == 0) {
      row.excluded = true;
      row.reason = "p(n) = 0";
      row.ks_distance = row.ks_signed = row.ks_saddle_general = kNaN;
      rep.rows.push_back(row);
      continue;
    }
    const ExactDistribution d = exact_distribution(table, n);
    const std::vector<double> pmf = pmf_doubles(d);
    row.mean_exact = d.mean.get_d();
    row.var_exact = d.variance.get_d();
    row.negativity_count = d.negativity_flags.size();
    row.negative_mass = negative_mass(pmf);
    row.degenerate = !(row.var_exact > 0.0);

    const double sd = row.var_exact > 0.0 ? std::sqrt(row.var_exact) : 0.0;
    row.ks_signed = ks_distance(pmf, row.mean_exact, sd);
    if (!d.nonnegative()) {
      row.excluded = true;
      row.reason = d.total_positive ? "negative coefficients in row" : "negative row total";
      row.ks_distance = kNaN;
    } else {
      row.ks_distance = row.ks_signed;
    }
    if (row.degenerate) row.reason = row.reason.empty() ? "zero variance" : row.reason + "; zero variance";

    const MeanVariance lit = mean_variance_saddle(static_cast<double>(n), table.r, SaddleMode::paper_literal);
    const MeanVariance gen = mean_variance_saddle(static_cast<double>(n), table.r, SaddleMode::general);
    row.mu_saddle = lit.mu;
    row.nu2_saddle = lit.nu2;
    row.mu_saddle_general = gen.mu;
    row.nu2_saddle_general = gen.nu2;
    row.ks_saddle_general = gen.nu2 > 0.0 ? ks_distance(pmf, gen.mu, std::sqrt(gen.nu2)) : kNaN;
    if (gen.mu > 0.0 && gen.nu2 > 0.0) {
      fit_n.push_back(static_cast<double>(n));
      fit_mu.push_back(gen.mu);
      fit_nu.push_back(gen.nu2);
    }
    rep.rows.push_back(row);
  }

  double prev = -1.0;
  for (const auto& row : rep.rows) {
    if (row.excluded) ++rep.excluded_count;
    if (row.excluded || row.degenerate) continue;
    ++rep.ks_trend_points;
    if (prev >= 0.0 && row.ks_distance > 1.1 * prev) rep.ks_trend_ok = false;
    prev = row.ks_distance;
  }
  rep.exclusion_rate = static_cast<double>(rep.excluded_count) / static_cast<double>(rep.rows.size());
  if (fit_n.size() >= 2) {
    rep.exponent_fit_mean = fit_loglog(fit_n, fit_mu);
    rep.exponent_fit_var = fit_loglog(fit_n, fit_nu);
  }
  return rep;
}

MgfProfile mgf_profile(const PartitionTable& table, std::size_t n, const std::vector<double>& theta_grid) {
  require(n >= 1 && n <= table.N, "mgf_profile: n outside the table");
  MgfProfile prof;
  prof.n = n;
  prof.r = table.r;
  const ExactDistribution d = exact_distribution(table, n);
  if (!d.nonnegative()) {
    prof.blocked = true;
    prof.reason = "negative coefficients in row";
  }
  const std::vector<double> pmf = pmf_doubles(d);
  const double mean = d.mean.get_d();
  const double var = d.variance.get_d();
  if (!(var > 0.0)) {
    prof.blocked = true;
    prof.reason = prof.reason.empty() ? "zero variance" : prof.reason + "; zero variance";
  }
  const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
  for (double theta : theta_grid) {
    require(theta >= -2.0 && theta <= 2.0, "mgf_profile: theta must lie in [-2, 2]");
    MgfPoint p;
    p.theta = theta;
    if (theta == 0.0) {
      p.m_exact = 1.0;
    } else {
      KahanSum acc;
      for (std::size_t k = 0; k < pmf.size(); ++k)
        if (pmf[k] != 0.0) acc += pmf[k] * std::exp((static_cast<double>(k) - mean) * theta / sd);
      p.m_exact = acc.value();
    }
    p.gauss_target = std::exp(theta * theta / 2.0);
    p.rel_deviation = std::fabs(p.m_exact - p.gauss_target) / p.gauss_target;
    prof.points.push_back(p);
  }
  return prof;
}

double tail_threshold(std::size_t n, int r) {
  require(n >= 2, "tail_threshold: n must be at least 2");
  const double nd = static_cast<double>(n);
  return std::pow(nd, (r + 1.0) / (6.0 * (r + 2.0))) / std::log(nd);
}

TailReport tail_check(const PartitionTable& table, std::size_t n, const std::vector<double>& x_grid,
                      double slack) {
  require(n >= 2 && n <= table.N, "tail_check: n outside the table");
  require(slack >= 0.0, "tail_check: slack must be nonnegative");
  TailReport rep;
  rep.n = n;
  rep.r = table.r;
  rep.slack = slack;
  rep.T = tail_threshold(n, table.r);
  const ExactDistribution d = exact_distribution(table, n);
  if (!d.nonnegative()) {
    rep.excluded = true;
    rep.reason = "negative coefficients in row; probabilities below are signed";
  }
  const double mean = d.mean.get_d();
  const double var = d.variance.get_d();
  require(var > 0.0, "tail_check: zero variance row");
  const double sd = std::sqrt(var);

  for (double x : x_grid) {
    require(x >= 0.0, "tail_check: x must be nonnegative");
    const bool gaussian = x <= rep.T;
    const double bound = (gaussian ? std::exp(-x * x / 2.0) : std::exp(-rep.T * x / 2.0)) * (1.0 + slack);
    for (const char* side : {"right", "left"}) {
      const bool right = side[0] == 'r';
      mpq_class prob = 0;
      for (std::size_t k = 0; k < d.pmf.size(); ++k) {
        const double z = (static_cast<double>(k) - mean) / sd;
        if (right ? z >= x : z <= -x) prob += d.pmf[k];
      }
      TailRecord rec;
      rec.x = x;
      rec.side = side;
      rec.branch = gaussian ? "gaussian" : "linear";
      rec.lhs_prob = prob.get_d();
      rec.bound = bound;
      rec.ok = rec.lhs_prob <= rec.bound;
      if (!rec.ok) ++rep.violations;
      if (rec.bound < 0.0) rep.self_consistent = false;
      if ((rec.branch == "gaussian") != (x <= rep.T)) rep.self_consistent = false;
      if (!rep.excluded && (rec.lhs_prob < 0.0 || rec.lhs_prob > 1.0)) rep.self_consistent = false;
      rep.records.push_back(rec);
    }
  }
  return rep;
}

ExponentFit exponent_fit(int r, const std::vector<double>& n_grid) {
  require(n_grid.size() >= 4, "exponent_fit: need at least four grid points");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    require(n_grid[i] > n_grid[i - 1], "exponent_fit: grid must be increasing");
  ExponentFit out;
  out.r = r;
  out.n_grid = n_grid;
  out.target = (r + 1.0) / (r + 2.0);
  std::vector<double> mu, nu, mul, nul;
  for (double n : n_grid) {
    const MeanVariance g = mean_variance_saddle(n, r, SaddleMode::general);
    const MeanVariance l = mean_variance_saddle(n, r, SaddleMode::paper_literal);
    if (g.degenerate || l.degenerate) throw InvariantError("exponent_fit: degenerate saddle variance");
    mu.push_back(g.mu);
    nu.push_back(g.nu2);
    mul.push_back(l.mu);
    nul.push_back(l.nu2);
  }
  out.mean = fit_loglog(n_grid, mu);
  out.var = fit_loglog(n_grid, nu);
  out.mean_literal = fit_loglog(n_grid, mul);
  out.var_literal = fit_loglog(n_grid, nul);
  for (std::size_t len = 4; len <= n_grid.size(); ++len) {
    const std::vector<double> xs(n_grid.begin(), n_grid.begin() + len);
    const std::vector<double> ys(mu.begin(), mu.begin() + len);
    out.prefix_slopes.push_back(fit_loglog(xs, ys).slope);
  }
  out.trend_toward_target =
      std::fabs(out.prefix_slopes.back() - out.target) <= std::fabs(out.prefix_slopes.front() - out.target);
  return out;
}

}  // namespace sigmapart
