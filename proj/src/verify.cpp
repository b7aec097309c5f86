#include "sigmapart/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "sigmapart/arith.hpp"
#include "sigmapart/cltlab.hpp"
#include "sigmapart/dirichlet.hpp"
#include "sigmapart/partition.hpp"
#include "sigmapart/saddle.hpp"
#include "sigmapart/special.hpp"

namespace sigmapart {

std::size_t VerifyReport::hard_failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.hard && !c.ok; }));
}

std::size_t VerifyReport::soft_failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.hard && !c.ok; }));
}

Json VerifyReport::to_json() const {
  Json j;
  j["quick"] = quick;
  Json list = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["module"] = c.module;
    e["name"] = c.name;
    e["ok"] = c.ok;
    e["hard"] = c.hard;
    e["detail"] = c.detail.is_null() ? Json::object() : c.detail;
    list.push_back(std::move(e));
  }
  j["checks"] = std::move(list);
  j["hard_failures"] = hard_failures();
  j["soft_failures"] = soft_failures();
  j["total"] = checks.size();
  return j;
}

namespace {

class Suite {
 public:
  explicit Suite(VerifyReport& rep) : rep_(rep) {}

  template <class Fn>
  void run(const std::string& module, const std::string& name, bool hard, Fn fn) {
    CheckResult c;
    c.module = module;
    c.name = name;
    c.hard = hard;
    try {
      c.ok = fn(c.detail);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail["exception"] = e.what();
    }
    rep_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& rep_;
};

double direct_ramanujan(std::uint64_t m, std::uint64_t n) {
  double acc = 0.0;
  for (std::uint64_t b = 1; b <= m; ++b)
    if (std::gcd(b, m) == 1) acc += std::cos(2.0 * std::numbers::pi * static_cast<double>(b * n % m) / m);
  return acc;
}

void arith_checks(Suite& s, bool quick) {
  s.run("arith", "multiplicative_basics examples", true, [](Json& d) {
    const auto a = multiplicative_basics(1), b = multiplicative_basics(12), c = multiplicative_basics(30);
    d["12"] = {b.mu, b.phi, b.omega};
    d["30"] = {c.mu, c.phi, c.omega};
    return a.mu == 1 && a.phi == 1 && a.omega == 0 && b.mu == 0 && b.phi == 4 && b.omega == 2 &&
           c.mu == -1 && c.phi == 8 && c.omega == 3;
  });
  s.run("arith", "gap sequence invariants", true, [quick](Json& d) {
    const std::size_t N = quick ? 200 : 1000;
    bool ok = true;
    for (int r : {1, 2, 3}) {
      const GapSequence g = make_gap_sequence(r, N);
      ok = ok && g.sigma_at(1) == 1;
      const double zr = r >= 2 ? zeta_real(r) : 0.0;
      for (std::size_t n = 2; n <= N + 1 && ok; ++n) {
        if (multiplicative_basics(n).omega == 1 && factorize(n)[0].exponent == 1) {
          mpz_class p = static_cast<unsigned long>(n);
          mpz_class pr;
          mpz_pow_ui(pr.get_mpz_t(), p.get_mpz_t(), r);
          ok = ok && g.sigma_at(n) == pr + 1;
        }
        if (r >= 2) {
          const double nr = std::pow(static_cast<double>(n), r);
          const double sv = g.sigma_at(n).get_d();
          ok = ok && nr < sv && sv < nr * zr;
        }
      }
      for (std::size_t k = 1; k <= N; ++k) ok = ok && g.gap(k) == g.sigma_at(k + 1) - g.sigma_at(k);
      for (std::size_t m = 2; m * m <= N; ++m)
        for (std::size_t n = m + 1; m * n <= N; ++n)
          if (std::gcd(m, n) == 1) ok = ok && g.sigma_at(m * n) == g.sigma_at(m) * g.sigma_at(n);
      ok = ok && sigma_r(6, 2) == 50 && sigma_r(11, 2) == 122 && sigma_r(10, 2) == 130;
    }
    d["limit"] = N;
    return ok;
  });
  s.run("arith", "ramanujan closed form vs exponential sum", true, [quick](Json& d) {
    const std::uint64_t M = quick ? 40 : 100;
    double worst = 0.0;
    bool coprime_ok = true;
    for (std::uint64_t m = 1; m <= M; ++m)
      for (std::uint64_t n = 1; n <= M; ++n) {
        const auto c = ramanujan_sum(m, n);
        worst = std::max(worst, std::fabs(static_cast<double>(c) - direct_ramanujan(m, n)));
        if (std::gcd(m, n) == 1 && c != moebius(m)) coprime_ok = false;
      }
    d["max_abs_error"] = worst;
    d["limit"] = M;
    d["coprime_equals_mu"] = coprime_ok;
    return worst < 1e-10 && coprime_ok;
  });
  s.run("arith", "character tables: count, orthogonality, column sums", true, [quick](Json& d) {
    const std::uint32_t M = quick ? 24 : 50;
    double worst = 0.0;
    bool ok = true;
    for (std::uint32_t m = 1; m <= M; ++m) {
      const auto chars = characters_mod(m);
      const std::uint64_t phi = totient(m);
      ok = ok && chars.size() == phi && chars[0].is_principal;
      for (std::size_t i = 0; i < chars.size(); ++i) {
        const auto& chi = chars[i];
        for (std::uint32_t a = 0; a < m; ++a) {
          const bool unit = std::gcd(a, m) == 1;
          const double mod = std::abs(chi.values[a]);
          ok = ok && (unit ? std::fabs(mod - 1.0) < 1e-12 : mod == 0.0);
          for (std::uint32_t b = 0; b < m; ++b)
            worst = std::max(worst, std::abs(chi.values[(static_cast<std::uint64_t>(a) * b) % m] -
                                             chi.values[a] * chi.values[b]));
        }
        for (std::size_t j = 0; j < chars.size(); ++j) {
          Complex inner = 0.0;
          for (std::uint32_t a = 0; a < m; ++a) inner += chars[i].values[a] * std::conj(chars[j].values[a]);
          const double want = i == j ? static_cast<double>(phi) : 0.0;
          worst = std::max(worst, std::abs(inner - want));
        }
      }
      for (std::uint32_t a = 0; a < m; ++a) {
        Complex col = 0.0;
        for (const auto& chi : chars) col += chi.values[a];
        const double want = (a % m == 1 % m) ? static_cast<double>(phi) : 0.0;
        worst = std::max(worst, std::abs(col - want));
      }
    }
    d["max_deviation"] = worst;
    d["limit"] = M;
    return ok && worst < 1e-9;
  });
  s.run("arith", "shifted Ramanujan identity sweep", true, [quick](Json& d) {
    const std::uint64_t M = quick ? 12 : 30;
    const std::uint64_t Nn = quick ? 40 : 100;
    double worst = 0.0;
    for (std::uint64_t m = 1; m <= M; ++m)
      for (std::uint64_t n = 1; n <= Nn; ++n) worst = std::max(worst, shifted_ramanujan_identity_residual(m, n));
    d["max_residual"] = worst;
    d["m_max"] = M;
    d["n_max"] = Nn;
    return worst < 1e-9;
  });
  s.run("arith", "primitive inducing character and Gauss sums", true, [quick](Json& d) {
    const std::uint32_t M = quick ? 24 : 48;
    std::size_t checked = 0, scale_failures = 0;
    bool ok = true;
    double worst_prim = 0.0;
    for (std::uint32_t m = 2; m <= M; ++m)
      for (const auto& chi : characters_mod(m)) {
        if (chi.is_principal) continue;
        const auto ind = induce_primitive(chi);
        ++checked;
        ok = ok && ind.gauss_relation_check && ind.primitive.modulus == chi.conductor;
        if (!ind.scale_check) ++scale_failures;
        if (chi.is_primitive) {
          ok = ok && ind.scale_check;
          worst_prim = std::max(worst_prim, std::fabs(std::abs(character_sums(chi, 1).tau) - std::sqrt(double(m))));
        }
      }
    d["characters"] = checked;
    d["scale_identity_failures_imprimitive"] = scale_failures;
    d["max_gauss_modulus_error_primitive"] = worst_prim;
    return ok && worst_prim < 1e-9;
  });
}

void partition_checks(Suite& s, bool quick) {
  s.run("partition", "hand-expanded coefficients", true, [](Json& d) {
    const auto t = build_table(2, 3);
    d["p(3,2)"] = t.at(3, 2).get_str();
    return t.at(0, 0) == 1 && t.at(1, 1) == 4 && t.at(2, 2) == 6 && t.at(3, 2) == 20 && t.at(3, 3) == 4;
  });
  s.run("partition", "build_table equals both oracles", true, [quick](Json& d) {
    const std::size_t top = quick ? 9 : 12;
    bool ok = true;
    std::size_t enumerations = 0;
    for (int r : {2, 3})
      for (std::size_t N = 1; N <= top; ++N) {
        const auto o = oracle_table(r, N);
        const auto b = build_table(r, N);
        ok = ok && o.polynomial == b;
        if (o.enumeration) {
          ++enumerations;
          ok = ok && *o.enumeration == b;
        }
      }
    d["N_max"] = top;
    d["enumeration_runs"] = enumerations;
    return ok;
  });
  s.run("partition", "row totals equal the univariate product", true, [quick](Json& d) {
    const std::size_t N = quick ? 60 : 150;
    bool ok = true;
    for (int r : {2, 3}) ok = ok && build_table(r, N).row_totals == univariate_totals(r, N);
    d["N"] = N;
    return ok;
  });
  s.run("partition", "factor order invariance", true, [quick](Json& d) {
    const std::size_t N = quick ? 20 : 40;
    const auto base = build_table(2, N);
    std::mt19937_64 rng(0x5eedULL);
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t{1});
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      // Fisher-Yates with an explicit index draw so the permutations are portable
      for (std::size_t k = N - 1; k > 0; --k) std::swap(order[k], order[rng() % (k + 1)]);
      ok = ok && build_table(2, N, 0, order) == base;
    }
    d["N"] = N;
    d["permutations"] = 5;
    return ok;
  });
  s.run("partition", "exact distribution normalisation", true, [quick](Json& d) {
    const std::size_t N = quick ? 60 : 200;
    const auto t = build_table(2, N);
    std::size_t negative_rows = 0;
    bool ok = true;
    for (std::size_t n = 1; n <= N; ++n) {
      const auto dist = exact_distribution(t, n);
      mpq_class sum = 0;
      for (const auto& p : dist.pmf) sum += p;
      ok = ok && sum == 1;
      if (!dist.nonnegative()) ++negative_rows;
      else
        for (const auto& p : dist.pmf) ok = ok && p >= 0 && p <= 1;
    }
    const auto two = exact_distribution(t, 2);
    ok = ok && two.pmf[1] == mpq_class(5, 11) && two.pmf[2] == mpq_class(6, 11);
    d["rows"] = N;
    d["rows_with_negative_coefficients"] = negative_rows;
    return ok;
  });
}

void dirichlet_checks(Suite& s, bool quick) {
  s.run("dirichlet", "zeta and gamma reference values", true, [](Json& d) {
    const double pi = std::numbers::pi;
    const double e2 = std::fabs(zeta_real(2) - pi * pi / 6) / (pi * pi / 6);
    const double e4 = std::fabs(zeta_real(4) - std::pow(pi, 4) / 90) / (std::pow(pi, 4) / 90);
    const double g = std::fabs(gamma_real(0.5) - std::sqrt(pi)) / std::sqrt(pi);
    d["zeta2_rel"] = e2;
    d["zeta4_rel"] = e4;
    d["gamma_half_rel"] = g;
    return e2 < 1e-12 && e4 < 1e-12 && g < 1e-12 && gamma_real(5) == 24.0;
  });
  s.run("dirichlet", "polylog at -1 against the standard identity", true, [](Json& d) {
    double worst = std::fabs(polylog_neg(1, 1) + std::log(2.0));
    for (int k = 2; k <= 5; ++k)
      worst = std::max(worst, std::fabs(polylog_neg(k, 1) + (1 - std::pow(2.0, 1 - k)) * zeta_real(k)));
    double series = 0.0;
    for (double u : {0.2, 0.7, 1.0})
      for (double sv : {0.5, 2.0, 3.5}) series = std::max(series, std::fabs(polylog_neg(sv, u) - polylog_neg_series(sv, u)));
    d["identity_max_error"] = worst;
    d["series_max_error"] = series;
    return worst < 1e-9 && series < 1e-10;
  });
  s.run("dirichlet", "C(1) and the Landau totient constant", true, [](Json& d) {
    const auto C = constant_C(1);
    d["C1"] = C.value;
    d["zeta2_C1"] = zeta_real(2) * C.value;
    return std::fabs(C.value - 1.339784) < 1e-5 && std::fabs(zeta_real(2) * C.value - 2.20386) < 1e-4 && C.converged;
  });
  s.run("dirichlet", "K_r limits", true, [](Json& d) {
    bool ok = true;
    for (int r : {1, 2, 3}) {
      ok = ok && euler_K(0.0, r).value == 1.0;
      ok = ok && std::fabs(euler_K(50.0, r).value - constant_C(r).value) < 1e-8;
    }
    d["K1(2)"] = euler_K(2.0, 1).value;
    return ok;
  });
  s.run("dirichlet", "Euler products stable under cutoff doubling", true, [quick](Json& d) {
    EulerOptions opts;
    if (quick) opts.prime_cutoff = 200'000;
    double worst = 0.0;
    std::vector<EulerFactor> factors = {factor_C(1), factor_C(2), factor_K(2.0, 1), factor_K(1.0, 2),
                                        factor_Cprime(2), factor_E(1.0, 2), factor_E(1.0, 3)};
    for (const auto& f : factors) worst = std::max(worst, euler_self_consistency(f, opts));
    const double chi4 = std::fabs(D2_chi4(3, 2, opts).value -
                                  D2_chi4(3, 2, {opts.prime_cutoff * 2, opts.tolerance}).value);
    d["max_change"] = worst;
    d["chi4_change"] = chi4;
    d["prime_cutoff"] = opts.prime_cutoff;
    return worst < opts.tolerance && chi4 < 1e-6;
  });
  s.run("dirichlet", "D1 closed form vs direct double sum", true, [quick](Json& d) {
    D1Truncation tr;
    if (quick) tr = {600, 6000};
    double worst = 0.0;
    for (auto [sv, r] : std::vector<std::pair<double, int>>{{3, 2}, {2, 1}, {4, 3}}) {
      const double diff = std::fabs(D1(sv, r, D1Mode::closed).value - D1(sv, r, D1Mode::direct, tr).value);
      d["diff_s" + std::to_string(int(sv)) + "_r" + std::to_string(r)] = diff;
      worst = std::max(worst, diff);
    }
    return worst < 1e-3;
  });
  s.run("dirichlet", "sigma_r Ramanujan expansion", true, [quick](Json& d) {
    const std::uint64_t M = quick ? 20'000 : 100'000;
    const auto series = sigma_ramanujan_series(50, 2, M);
    double worst = 0.0;
    for (std::uint64_t n = 1; n <= 50; ++n) {
      const double sv = sigma_r(n, 2).get_d();
      worst = std::max(worst, std::fabs(series[n] - sv) / sv);
    }
    d["max_rel_error"] = worst;
    d["m_max"] = M;
    return worst < 1e-3;
  });
  s.run("dirichlet", "D2 bound monotone and above the direct probe", true, [quick](Json& d) {
    const double b2 = D2_bound(2, 2), b3 = D2_bound(3, 2), b4 = D2_bound(4, 2);
    const auto direct = D2_direct(3, 2, quick ? 30 : 60, quick ? 20'000 : 100'000);
    d["bound"] = {b2, b3, b4};
    d["direct_abs"] = std::abs(direct.value);
    return b2 > b3 && b3 > b4 && b4 > 0 && std::abs(direct.value) <= b3;
  });
  s.run("dirichlet", "shifted series decomposition bound", true, [quick](Json& d) {
    bool ok = true;
    Json rows = Json::array();
    for (int r : {2, 3})
      for (double sv : {5.0, 6.0, 7.0}) {
        const auto res = shifted_series_residual(sv, r, quick ? 100'000 : 1'000'000);
        ok = ok && res.residual_bound_ok;
        const double dsig = std::fabs(res.dsigma_direct - res.dsigma_closed);
        ok = ok && dsig <= 1e-6 + res.truncation;
        rows.push_back({{"s", sv}, {"r", r}, {"residual", res.residual}, {"bound", res.residual_bound},
                        {"dsigma_error", dsig}});
      }
    d["grid"] = rows;
    return ok;
  });
  s.run("dirichlet", "C_mu positive under the standard convention", true, [](Json& d) {
    bool ok = true;
    for (int r : {2, 3, 4}) {
      const auto recs = constants_N_Cmu_Csigma(r);
      ok = ok && recs[1].C_mu > 0.0 && recs[1].N >= 0.0;
      d["r" + std::to_string(r)] = {{"N", recs[1].N}, {"C_mu", recs[1].C_mu}, {"ratio", recs[0].discrepancy_ratio}};
    }
    return ok;
  });
}

void saddle_checks(Suite& s, bool quick) {
  s.run("saddle", "analytic partials vs finite differences", true, [quick](Json& d) {
    double worst = 0.0;
    const std::vector<double> us = quick ? std::vector<double>{1.0} : std::vector<double>{0.5, 1.0, 1.5};
    for (int r : {2, 3})
      for (double g : {0.05, 0.1})
        for (double u : us)
          for (const auto& req : all_requests()) {
            if (req.j_gamma == 0 && req.j_u == 0) continue;
            DerivativeRequest lower = req;
            double fd;
            if (req.j_u > 0) {
              --lower.j_u;
              const double h = 1e-4 * u;
              fd = (F_partial(g, u + h, r, lower) - F_partial(g, u - h, r, lower)) / (2 * h);
            } else {
              --lower.j_gamma;
              const double h = 1e-4 * g;
              fd = (F_partial(g + h, u, r, lower) - F_partial(g - h, u, r, lower)) / (2 * h);
            }
            worst = std::max(worst, std::fabs(F_partial(g, u, r, req) - fd) / std::fabs(fd));
          }
    d["max_rel_error"] = worst;
    return worst < 1e-5;
  });
  s.run("saddle", "saddle residuals and re-solve stability", true, [](Json& d) {
    bool ok = true;
    double worst = 0.0;
    for (int r : {2, 3})
      for (auto mode : {SaddleMode::general, SaddleMode::paper_literal})
        for (double n : {1.0, 10.0, 100.0, 1000.0}) {
          const auto sp = solve_saddle(n, 1.0, r, mode);
          ok = ok && sp.residual < 1e-9 * std::max(1.0, n) && sp.B2 > 0.0;
          worst = std::max(worst, sp.residual / std::max(1.0, n));
          SaddleOptions perturbed;
          perturbed.initial_scale = sp.tau * 1.37;
          const auto again = solve_saddle(n, 1.0, r, mode, perturbed);
          ok = ok && std::fabs(again.tau - sp.tau) <= 1e-10 * sp.tau;
        }
    d["max_scaled_residual"] = worst;
    return ok;
  });
  s.run("saddle", "Mellin leading-order ratios", true, [](Json& d) {
    bool ok = true;
    for (int r : {2, 3})
      for (int j : {0, 1}) {
        const auto m = mellin_ratio_check(j, {0.1, 0.05, 0.02}, 1.0, r);
        ok = ok && std::fabs(m.ratios.back() - 1.0) < 0.05 && m.monotone;
        d["r" + std::to_string(r) + "_j" + std::to_string(j)] = m.ratios;
      }
    return ok;
  });
  s.run("saddle", "minor arc ratio", true, [](Json& d) {
    bool ok = minor_arc_ratio(0.05, 0.0, 1.0, 2) == 1.0;
    std::vector<double> logs;
    for (double tau : {0.1, 0.05, 0.02}) logs.push_back(minor_arc_log_ratio(tau, std::numbers::pi, 1.0, 2));
    ok = ok && logs[0] < 0.0 && logs[1] < logs[0] && logs[2] < logs[1];
    d["log_ratio_at_pi"] = logs;
    return ok;
  });
  s.run("saddle", "h1 boundedness probe", false, [](Json& d) {
    bool ok = true;
    for (int j : {0, 1}) {
      const auto p = h1_boundedness_probe(j, 0.05, 1.0, 2);
      const auto half = h1_boundedness_probe(j, 0.025, 1.0, 2);
      const double growth = half.value / p.value;
      const double want = std::pow(2.0, 2 + j + 1);
      ok = ok && p.ok && std::fabs(growth / want - 1.0) < 0.2;
      d["j" + std::to_string(j)] = {{"value", p.value}, {"bound", p.bound}, {"growth", growth}};
    }
    return ok;
  });
  s.run("saddle", "Li-Chen sign compatibility", true, [](Json& d) {
    bool ok = true;
    double rho = 1e300;
    for (double xi : {0.2, 0.1, 0.05})
      for (double y : {std::numbers::pi / 2, std::numbers::pi}) {
        const auto l = lichen_probe(2, xi, y);
        if (l.rhs_shape > 0.0) ok = ok && l.lhs > 0.0;
        if (l.rhs_shape > 0.0) rho = std::min(rho, l.lhs / l.rhs_shape);
      }
    const auto zero = lichen_probe(2, 0.1, 0.0);
    ok = ok && zero.lhs == 0.0 && zero.rhs_shape == 0.0;
    d["rho_estimate"] = rho;
    return ok;
  });
}

void clt_checks(Suite& s, bool quick) {
  s.run("cltlab", "erf reference value", true, [](Json& d) {
    const double e1 = std::erf(1.0);
    // Maclaurin series of erf at 1
    double series = 0.0, term = 1.0;
    for (int k = 0; k < 40; ++k) {
      series += term / (2 * k + 1);
      term *= -1.0 / (k + 1);
    }
    series *= 2.0 / std::sqrt(std::numbers::pi);
    d["erf1"] = e1;
    return std::fabs(e1 - series) / series < 1e-10 && std::fabs(e1 - 0.8427007929) < 1e-10;
  });
  s.run("cltlab", "standardized exact moments and KS range", true, [quick](Json& d) {
    const std::size_t N = quick ? 100 : 400;
    const auto t = build_table(2, N);
    bool ok = true;
    double worst = 0.0;
    std::size_t positive = 0;
    for (std::size_t n = 2; n <= N; ++n) {
      const auto dist = exact_distribution(t, n);
      if (!dist.nonnegative()) continue;
      ++positive;
      const double mean = dist.mean.get_d(), sd = std::sqrt(dist.variance.get_d());
      double m1 = 0.0, m2 = 0.0;
      std::vector<double> pmf;
      for (std::size_t k = 0; k < dist.pmf.size(); ++k) {
        const double p = dist.pmf[k].get_d();
        pmf.push_back(p);
        const double z = (static_cast<double>(k) - mean) / sd;
        m1 += p * z;
        m2 += p * z * z;
      }
      worst = std::max({worst, std::fabs(m1), std::fabs(m2 - 1.0)});
      const double ks = ks_distance(pmf, mean, sd);
      ok = ok && ks >= 0.0 && ks <= 1.0;
    }
    d["positive_rows"] = positive;
    d["max_moment_error"] = worst;
    return ok && worst < 1e-12;
  });
  s.run("cltlab", "tail report self-consistency", true, [quick](Json& d) {
    const std::size_t N = quick ? 100 : 400;
    const auto t = build_table(2, N);
    const auto rep = tail_check(t, N, {0.0, 1.0, 2.0, 1e3});
    d["excluded"] = rep.excluded;
    d["violations"] = rep.violations;
    d["T"] = rep.T;
    bool ok = rep.self_consistent;
    for (const auto& rec : rep.records) ok = ok && rec.bound >= 0.0;
    return ok;
  });
  s.run("cltlab", "KS trend on positive rows", false, [quick](Json& d) {
    const auto rep = clt_report(2, {50, 100, 200, 400}, quick ? 400 : kDefaultCltLimit);
    d["excluded"] = rep.excluded_count;
    d["trend_points"] = rep.ks_trend_points;
    Json signed_ks = Json::array();
    for (const auto& row : rep.rows) signed_ks.push_back(row.ks_signed);
    d["ks_signed"] = signed_ks;
    return rep.ks_trend_ok;
  });
  const std::vector<double> grid = {100, 200, 400, 800, 1600};
  s.run("cltlab", "exponent fit of the saddle mean", false, [&grid](Json& d) {
    bool ok = true;
    for (int r : {2, 3}) {
      const auto f = exponent_fit(r, grid);
      ok = ok && std::fabs(f.mean.slope - f.target) < 0.1;
      d["r" + std::to_string(r)] = {{"slope", f.mean.slope}, {"target", f.target},
                                    {"slope_literal", f.mean_literal.slope}, {"residual", f.mean.residual}};
    }
    return ok;
  });
  s.run("cltlab", "exponent fit of the saddle variance", false, [&grid](Json& d) {
    bool ok = true;
    for (int r : {2, 3}) {
      const auto f = exponent_fit(r, grid);
      ok = ok && std::fabs(f.var.slope - f.target) < 0.1;
      d["r" + std::to_string(r)] = {{"slope", f.var.slope}, {"target", f.target},
                                    {"slope_literal", f.var_literal.slope}, {"residual", f.var.residual}};
    }
    return ok;
  });
}

}  // namespace

VerifyReport run_verify(bool quick) {
  VerifyReport rep;
  rep.quick = quick;
  Suite s(rep);
  arith_checks(s, quick);
  partition_checks(s, quick);
  dirichlet_checks(s, quick);
  saddle_checks(s, quick);
  clt_checks(s, quick);
  return rep;
}

}  // namespace sigmapart
