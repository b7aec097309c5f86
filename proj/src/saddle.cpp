#include "sigmapart/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>

#include "sigmapart/arith.hpp"
#include "sigmapart/dirichlet.hpp"
#include "sigmapart/special.hpp"

namespace sigmapart {

namespace {

// Sum over k >= 1 of term(k, weight(k), x = e^{-gamma k}). Stops once past
// the peak of k^{r+4} e^{-gamma k} and envelope(k) k^4 e^{-gamma k} drops
// below 1e-18 of the accumulated absolute sum.
template <class Weight, class Envelope, class Term>
double truncated_sum(double gamma, int r, Weight weight, Envelope envelope, Term term,
                     std::size_t cap, std::size_t* used = nullptr) {
  require(gamma > 0.0, "truncated sum: gamma must be positive");
  const double kpeak = (r + 4.0) / gamma;
  KahanSum acc;
  double magnitude = 0.0;
  std::size_t k = 1;
  for (;; ++k) {
    if (k > kMaxSeriesTerms) throw BudgetError("truncated sum: term cap exceeded (gamma too small)");
    if (cap != 0 && k > cap) break;
    const double kd = static_cast<double>(k);
    const double x = std::exp(-gamma * kd);
    const double t = term(kd, weight(k), x);
    acc += t;
    magnitude += std::fabs(t);
    if (kd > kpeak) {
      const double bound = envelope(kd) * kd * kd * kd * kd * x;
      if (bound <= 1e-18 * magnitude || bound < 1e-300) break;
    }
  }
  if (used) *used = k;
  return acc.value();
}

// gap-table accessor that grows the shared table as the sum walks outward
class GapCursor {
 public:
  explicit GapCursor(int r, double gamma, bool shifted_sigma = false, bool plain_sigma = false)
      : r_(r), shifted_(shifted_sigma), plain_(plain_sigma) {
    const double guess = (r + 4.0) / gamma * 4.0 + 64.0;
    table_ = gap_table(r, static_cast<std::size_t>(std::min(guess, 2.0e7)));
  }
  double operator()(std::size_t k) {
    if (k + 1 > table_->limit) table_ = gap_table(r_, 2 * (k + 1));
    if (shifted_) return table_->sigma[k + 1];
    if (plain_) return table_->sigma[k];
    return table_->gaps[k];
  }

 private:
  int r_;
  bool shifted_;
  bool plain_;
  std::shared_ptr<const GapTable> table_;
};

double envelope_factor(int r) { return r >= 2 ? zeta_real(r) : 1.0; }

auto sigma_envelope(int r) {
  const double c = envelope_factor(r);
  return [c, r](double k) { return c * (1.0 + std::log(k + 1.0)) * std::pow(k + 2.0, r); };
}

double partial_term(const DerivativeRequest& d, double k, double delta, double u, double x) {
  const double w = u * x;
  const double D = 1.0 + w;
  switch (d.j_u * 10 + d.j_gamma) {
    case 0: return delta * std::log1p(w);
    case 10: return delta * x / D;
    case 20: return -delta * x * x / (D * D);
    case 30: return 2.0 * delta * x * x * x / (D * D * D);
    case 1: return -delta * k * w / D;
    case 2: return delta * k * k * w / (D * D);
    case 3: return -delta * k * k * k * w * (1.0 - w) / (D * D * D);
    case 4: return delta * k * k * k * k * w * (1.0 - 4.0 * w + w * w) / (D * D * D * D);
    case 11: return -delta * k * x / (D * D);
    case 21: return 2.0 * delta * k * x * x / (D * D * D);
    case 31: return -6.0 * delta * k * x * x * x / (D * D * D * D);
    case 12: return delta * k * k * x * (1.0 - w) / (D * D * D);
    case 22: return -2.0 * delta * k * k * x * x * (2.0 - w) / (D * D * D * D);
    case 13: return -delta * k * k * k * x * (1.0 - 4.0 * w + w * w) / (D * D * D * D);
    default: break;
  }
  throw ConfigError("F_partial: unsupported derivative request");
}

double literal_equation(double eta, double u) {
  return truncated_sum(
      eta, 0, [](std::size_t) { return 1.0; }, [](double) { return 1.0; },
      [u](double k, double, double x) { return k * u * x / (1.0 + u * x); }, 0);
}

double literal_equation_slope(double eta, double u) {
  return truncated_sum(
      eta, 0, [](std::size_t) { return 1.0; }, [](double) { return 1.0; },
      [u](double k, double, double x) {
        const double D = 1.0 + u * x;
        return -k * k * u * x / (D * D);
      },
      0);
}

}  // namespace

bool valid_request(const DerivativeRequest& d) {
  return d.j_gamma >= 0 && d.j_u >= 0 && d.j_gamma <= 4 && d.j_u <= 3 && d.j_gamma + d.j_u <= 4;
}

std::vector<DerivativeRequest> all_requests() {
  std::vector<DerivativeRequest> out;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 4; ++b) out.push_back({b, a});
  return out;
}

double F_partial(double gamma, double u, int r, DerivativeRequest d) {
  require(gamma > 0.0, "F_partial: gamma must be positive");
  require(u > 0.0, "F_partial: u must be positive");
  require(r >= 1, "F_partial: r must be at least 1");
  require(valid_request(d), "F_partial: derivative orders outside the supported table");
  GapCursor gaps(r, gamma);
  return truncated_sum(
      gamma, r, [&gaps](std::size_t k) { return gaps(k); }, sigma_envelope(r),
      [&d, u](double k, double delta, double x) { return partial_term(d, k, delta, u, x); }, 0);
}

std::size_t truncation_length(double gamma, int r) {
  GapCursor gaps(r, gamma);
  std::size_t used = 0;
  truncated_sum(
      gamma, r, [&gaps](std::size_t k) { return gaps(k); }, sigma_envelope(r),
      [](double, double delta, double x) { return delta * x / (1.0 + x); }, 0, &used);
  return used;
}

std::string to_string(SaddleMode m) { return m == SaddleMode::general ? "general" : "paper_literal"; }

SaddleMode parse_saddle_mode(const std::string& s) {
  if (s == "general") return SaddleMode::general;
  if (s == "paper_literal" || s == "paper-literal" || s == "literal") return SaddleMode::paper_literal;
  throw ConfigError("unknown saddle mode '" + s + "' (expected general or paper_literal)");
}

SaddlePoint solve_saddle(double n, double u, int r, SaddleMode mode, const SaddleOptions& opts) {
  require(n >= 1.0, "solve_saddle: n must be at least 1");
  require(u > 0.0, "solve_saddle: u must be positive");
  require(r >= 1, "solve_saddle: r must be at least 1");

  // g(t) = lhs(t) - n, decreasing in t when the profile is monotone
  auto lhs = [&](double t) {
    if (mode == SaddleMode::general) return -F_partial(t, u, r, {1, 0});
    return literal_equation(t, u);
  };
  auto slope = [&](double t) {
    if (mode == SaddleMode::general) return -F_partial(t, u, r, {2, 0});
    return literal_equation_slope(t, u);
  };
  auto g = [&](double t) { return lhs(t) - n; };

  double t0 = opts.initial_scale;
  if (!(t0 > 0.0))
    t0 = mode == SaddleMode::general ? std::pow(n, -1.0 / (r + 2.0)) : std::pow(n, -0.5);

  double lo = t0;
  double hi = t0;
  double glo = g(lo);
  double ghi = glo;
  int guard = 0;
  while (glo <= 0.0) {
    hi = lo;
    ghi = glo;
    lo /= 2.0;
    glo = g(lo);
    if (++guard > 200) throw InvariantError("solve_saddle: no lower bracket found");
  }
  while (ghi >= 0.0) {
    lo = hi;
    glo = ghi;
    hi *= 2.0;
    ghi = g(hi);
    if (++guard > 400) throw InvariantError("solve_saddle: no upper bracket found");
  }

  // monotonicity of the profile over the bracket
  {
    constexpr int kSamples = 16;
    std::vector<std::pair<double, double>> profile;
    bool monotone = true;
    double prev = glo;
    profile.emplace_back(lo, glo);
    for (int i = 1; i <= kSamples; ++i) {
      const double t = lo * std::pow(hi / lo, static_cast<double>(i) / kSamples);
      const double v = i == kSamples ? ghi : g(t);
      profile.emplace_back(t, v);
      if (v > prev) monotone = false;
      prev = v;
    }
    if (!monotone) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "solve_saddle: non-monotone bracket profile (t, g):";
      for (auto& [t, v] : profile) msg << " (" << t << ", " << v << ")";
      throw InvariantError(msg.str());
    }
  }

  SaddlePoint sp;
  sp.n = n;
  sp.r = r;
  sp.u = u;
  sp.mode = mode;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    ++sp.bisection_steps;
    if (gm > 0.0) lo = mid;
    else if (gm < 0.0) hi = mid;
    else {
      lo = hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  double gt = g(t);
  for (int i = 0; i < 5; ++i) {
    const double tol = (mode == SaddleMode::paper_literal ? 1e-13 : 1e-11) * std::max(1.0, n);
    if (std::fabs(gt) <= tol) break;
    const double s = slope(t);
    if (!(s < 0.0)) break;
    const double next = t - gt / s;
    if (!(next > 0.0)) break;
    const double gn = g(next);
    ++sp.newton_steps;
    if (std::fabs(gn) >= std::fabs(gt)) break;
    t = next;
    gt = gn;
  }

  sp.tau = t;
  sp.residual = std::fabs(gt);
  sp.F_val = F_partial(t, u, r, {0, 0});
  sp.F_g = F_partial(t, u, r, {1, 0});
  sp.F_gg = F_partial(t, u, r, {2, 0});
  sp.F_ggg = F_partial(t, u, r, {3, 0});
  sp.B2 = sp.F_gg;
  sp.theta_n = std::pow(t, 1.0 + 3.0 * r / 7.0);
  return sp;
}

MeanVariance mean_variance_saddle(double n, int r, SaddleMode mode) {
  const SaddlePoint sp = solve_saddle(n, 1.0, r, mode);
  MeanVariance mv;
  mv.tau = sp.tau;
  const double Fu = F_partial(sp.tau, 1.0, r, {0, 1});
  const double Fuu = F_partial(sp.tau, 1.0, r, {0, 2});
  const double Fug = F_partial(sp.tau, 1.0, r, {1, 1});
  const double Fgg = F_partial(sp.tau, 1.0, r, {2, 0});
  mv.mu = Fu;
  mv.nu2 = Fu + Fuu - Fug * Fug / Fgg;
  mv.degenerate = !(mv.nu2 > 0.0) || !(Fgg > 0.0);
  return mv;
}

namespace {

double ell_sum(int j, double y) {
  // sum_{l>=1} (-y)^l l^{j-1}
  switch (j) {
    case 0: return -std::log1p(y);
    case 1: return -y / (1.0 + y);
    case 2: return -y / ((1.0 + y) * (1.0 + y));
    case 3: return -y * (1.0 - y) / ((1.0 + y) * (1.0 + y) * (1.0 + y));
    default: break;
  }
  throw ConfigError("h-sum: j must lie in 0..3");
}

double h_sum(int j, double gamma, double u, int r, bool shifted) {
  require(j >= 0 && j <= 3, "h-sum: j must lie in 0..3");
  require(gamma > 0.0 && u > 0.0 && r >= 1, "h-sum: need gamma > 0, u > 0, r >= 1");
  GapCursor sig(r, gamma, shifted, !shifted);
  return truncated_sum(
      gamma, r + j, [&sig](std::size_t n) { return sig(n); }, sigma_envelope(r),
      [j, u](double n, double s, double x) { return s * std::pow(n, j) * ell_sum(j, u * x); }, 0);
}

}  // namespace

double h2_sum(int j, double gamma, double u, int r) { return h_sum(j, gamma, u, r, false); }
double h1_sum(int j, double gamma, double u, int r) { return h_sum(j, gamma, u, r, true); }

MellinRatios mellin_ratio_check(int j, const std::vector<double>& gamma_list, double u, int r) {
  require(!gamma_list.empty(), "mellin_ratio_check: empty gamma list");
  for (std::size_t i = 0; i < gamma_list.size(); ++i) {
    require(gamma_list[i] > 0.0, "mellin_ratio_check: gammas must be positive");
    if (i) require(gamma_list[i] < gamma_list[i - 1], "mellin_ratio_check: gammas must decrease");
  }
  MellinRatios out;
  const double lead = zeta_real(r + 1.0) * polylog_neg(r + 2.0, u) * gamma_real(j + r + 1.0);
  for (double g : gamma_list) {
    const double ratio = h2_sum(j, g, u, r) / (lead * std::pow(g, -(j + r + 1.0)));
    out.gammas.push_back(g);
    out.ratios.push_back(ratio);
  }
  out.monotone = true;
  for (std::size_t i = 1; i < out.ratios.size(); ++i)
    if (std::fabs(out.ratios[i] - 1.0) > std::fabs(out.ratios[i - 1] - 1.0)) out.monotone = false;
  return out;
}

H1Probe h1_boundedness_probe(int j, double gamma, double u, int r, double slack) {
  require(r >= 2, "h1_boundedness_probe: r must be at least 2");
  H1Probe out;
  out.value = h1_sum(j, gamma, u, r);
  // N(r) is defined through Euler products; evaluated once per r
  static std::mutex mutex;
  static std::map<int, double> cache;
  double N = 0.0;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, constant_N(r)).first;
    N = it->second;
  }
  out.bound = N * std::fabs(polylog_neg(r + 2.0, u)) * gamma_real(r + j + 1.0) *
              std::pow(gamma, -(r + j + 1.0)) * (1.0 + slack);
  out.ok = std::fabs(out.value) <= out.bound;
  return out;
}

double minor_arc_log_ratio(double tau, double theta, double u, int r, std::size_t n_cap) {
  require(tau > 0.0 && u > 0.0, "minor_arc_ratio: need tau > 0 and u > 0");
  require(std::fabs(theta) <= M_PI, "minor_arc_ratio: |theta| must not exceed pi");
  if (theta == 0.0) return 0.0;
  GapCursor gaps(r, tau);
  const double sum = truncated_sum(
      tau, r, [&gaps](std::size_t k) { return gaps(k); }, sigma_envelope(r),
      [u, theta](double k, double delta, double x) {
        // |1 + w e^{i k theta}|^2 / (1 + w)^2, formed without cancellation
        const double w = u * x;
        const double re = 1.0 + w * std::cos(k * theta);
        const double im = w * std::sin(k * theta);
        const double num = re * re + im * im;
        if (!(num > 0.0)) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "minor_arc_ratio: non-positive factor at k=" << k << " (w=" << w << ")";
          throw InvariantError(msg.str());
        }
        return delta * (std::log(num) - 2.0 * std::log1p(w));
      },
      n_cap);
  return 0.5 * sum;
}

double minor_arc_ratio(double tau, double theta, double u, int r, std::size_t n_cap) {
  return std::exp(minor_arc_log_ratio(tau, theta, u, r, n_cap));
}

LiChen lichen_probe(int k, double xi, double y) {
  require(k >= 1, "lichen_probe: k must be at least 1");
  require(xi > 0.0, "lichen_probe: xi must be positive");
  LiChen out;
  out.lhs = truncated_sum(
      xi, k - 1, [](std::size_t) { return 1.0; }, [](double) { return 2.0; },
      [k, y](double n, double, double x) { return std::pow(n, k - 1) * x * (1.0 - std::cos(n * y)); },
      0);
  const double q = std::exp(-xi);
  const double a = 1.0 - q * std::cos(y);
  const double b = q * std::sin(y);
  const double modulus = std::sqrt(a * a + b * b);
  out.rhs_shape = q / std::pow(1.0 - q, k) - q / std::pow(modulus, k);
  return out;
}

}  // namespace sigmapart
