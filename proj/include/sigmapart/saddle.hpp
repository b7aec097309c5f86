#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sigmapart/common.hpp"

namespace sigmapart {

/// Hard cap on the number of k-terms in any truncated sum.
inline constexpr std::size_t kMaxSeriesTerms = 10'000'000;

/// Orders of differentiation: j_gamma in 0..4, j_u in 0..3, j_gamma + j_u <= 4.
struct DerivativeRequest {
  int j_gamma = 0;
  int j_u = 0;
};

bool valid_request(const DerivativeRequest& d);
/// The fourteen admissible pairs, ordered by (j_u, j_gamma).
std::vector<DerivativeRequest> all_requests();

/// d^{j_u}/du^{j_u} d^{j_gamma}/dgamma^{j_gamma} of F(gamma,u) = sum_k Delta(k) log(1 + u e^{-gamma k}).
double F_partial(double gamma, double u, int r, DerivativeRequest d);

/// Number of k-terms the truncation rule keeps at this gamma.
std::size_t truncation_length(double gamma, int r);

enum class SaddleMode { general, paper_literal };
std::string to_string(SaddleMode m);
SaddleMode parse_saddle_mode(const std::string& s);

struct SaddlePoint {
  double n = 0.0;
  int r = 0;
  double u = 1.0;
  SaddleMode mode = SaddleMode::general;
  double tau = 0.0;
  double F_val = 0.0;
  double F_g = 0.0;
  double F_gg = 0.0;
  double F_ggg = 0.0;
  double B2 = 0.0;
  double theta_n = 0.0;
  double residual = 0.0;
  int bisection_steps = 0;
  int newton_steps = 0;
};

struct SaddleOptions {
  /// Starting guess scale; 0 picks n^{-1/(r+2)} (general) or n^{-1/2} (literal).
  double initial_scale = 0.0;
};

/// general: -F_gamma(tau, u) = n. paper_literal: sum_k k u / (e^{eta k} + u) = n.
/// Throws InvariantError with the sampled profile if the bracket is not monotone.
SaddlePoint solve_saddle(double n, double u, int r, SaddleMode mode, const SaddleOptions& opts = {});

struct MeanVariance {
  double mu = 0.0;
  double nu2 = 0.0;
  double tau = 0.0;
  bool degenerate = false;
};

/// mu = F_u, nu2 = F_u + F_uu - F_ugamma^2 / F_gammagamma at (tau, 1).
MeanVariance mean_variance_saddle(double n, int r, SaddleMode mode);

/// h_{2,j}(gamma, u) = sum_n sigma_r(n) n^j sum_l (-u)^l l^{j-1} e^{-n l gamma}.
double h2_sum(int j, double gamma, double u, int r);
/// Same with sigma_r(n+1).
double h1_sum(int j, double gamma, double u, int r);

struct MellinRatios {
  std::vector<double> gammas;
  std::vector<double> ratios;
  bool monotone = false;  // |ratio - 1| non-increasing along the list
};

MellinRatios mellin_ratio_check(int j, const std::vector<double>& gamma_list, double u, int r);

struct H1Probe {
  double value = 0.0;
  double bound = 0.0;
  bool ok = false;
};

H1Probe h1_boundedness_probe(int j, double gamma, double u, int r, double slack = 0.5);

/// |Q(e^{-tau - i theta}, u)| / Q(e^{-tau}, u). n_cap = 0 uses the truncation rule.
double minor_arc_ratio(double tau, double theta, double u, int r, std::size_t n_cap = 0);
/// Natural log of the same ratio; stays finite where the ratio underflows.
double minor_arc_log_ratio(double tau, double theta, double u, int r, std::size_t n_cap = 0);

struct LiChen {
  double lhs = 0.0;
  double rhs_shape = 0.0;
};

LiChen lichen_probe(int k, double xi, double y);

}  // namespace sigmapart
