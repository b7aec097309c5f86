#include "sigmapart/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sigmapart/cltlab.hpp"
#include "sigmapart/dirichlet.hpp"
#include "sigmapart/partition.hpp"
#include "sigmapart/report.hpp"
#include "sigmapart/saddle.hpp"
#include "sigmapart/verify.hpp"

namespace sigmapart {

namespace {

struct RunConfig {
  int r = 2;
  std::size_t N = 20;
  std::size_t K = 0;
  std::size_t n = 400;
  double n_real = 100.0;
  std::vector<std::size_t> n_list = {50, 100, 200, 400};
  double u = 1.0;
  std::string mode = "general";
  double s = 3.0;
  std::uint64_t prime_cutoff = 1000000;
  double tolerance = 1e-8;
  std::string output = "-";
  std::string format = "csv";
  std::string summary;
  unsigned workers = 1;
  bool quick = false;
  std::vector<double> theta_grid = {-0.5, -0.25, 0.0, 0.25, 0.5};
  std::vector<double> x_grid = {0.0, 1.0, 2.0};
  double slack = 0.5;
};

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file: " + path);
  f << text;
  if (!f) throw ConfigError("failed writing output file: " + path);
}

EulerOptions euler_opts(const RunConfig& c) { return {c.prime_cutoff, c.tolerance}; }

std::string cmd_table(const RunConfig& c) {
  const PartitionTable t = build_table(c.r, c.N, c.K);
  if (c.format == "json") return table_json(t);
  std::ostringstream os;
  write_table_csv(t, os);
  return os.str();
}

Json constants_record(const ConstantsRecord& rec) {
  Json j;
  j["r"] = rec.r;
  j["convention"] = to_string(rec.convention);
  j["C"] = num(rec.C);
  j["Cprime"] = num(rec.Cprime);
  j["K1"] = num(rec.K1);
  j["E1"] = num(rec.E1);
  j["N"] = num(rec.N);
  j["C_mu"] = num(rec.C_mu);
  j["C_sigma"] = num(rec.C_sigma);
  j["discrepancy_ratio"] = num(rec.discrepancy_ratio);
  j["C_mu_display"] = num(rec.C_mu_display);
  j["C_sigma_display"] = num(rec.C_sigma_display);
  return j;
}

std::string cmd_constants(const RunConfig& c) {
  const EulerOptions opts = euler_opts(c);
  Json records = Json::array();
  if (c.r == 1) {
    // N(r) and the mean/variance constants need r >= 2
    Json j;
    j["r"] = 1;
    j["convention"] = nullptr;
    j["C"] = num(constant_C(1, opts).value);
    j["Cprime"] = num(euler_product(factor_Cprime(1), opts).value);
    j["K1"] = num(euler_K(1.0, 1, opts).value);
    j["E1"] = num(euler_product(factor_E(1.0, 1), opts).value);
    for (const char* k : {"N", "C_mu", "C_sigma", "discrepancy_ratio", "C_mu_display", "C_sigma_display"})
      j[k] = nullptr;
    records.push_back(std::move(j));
  } else {
    for (const auto& rec : constants_N_Cmu_Csigma(c.r, opts)) records.push_back(constants_record(rec));
  }
  Json doc;
  doc["records"] = std::move(records);
  doc["prime_cutoff"] = c.prime_cutoff;
  doc["tolerance"] = c.tolerance;
  return dump_json(doc);
}

std::string cmd_dirichlet_check(const RunConfig& c) {
  const EulerOptions opts = euler_opts(c);
  Json j;
  j["r"] = c.r;
  j["s"] = c.s;
  const auto C = constant_C(c.r, opts);
  j["C"] = {{"value", num(C.value)}, {"tail_estimate", num(C.tail_estimate)}, {"converged", C.converged},
            {"self_consistency", num(euler_self_consistency(factor_C(c.r), opts))}};
  const auto K = euler_K(c.s, c.r, opts);
  j["K"] = {{"value", num(K.value)}, {"tail_estimate", num(K.tail_estimate)}};
  const auto closed = D1(c.s, c.r, D1Mode::closed, {}, opts);
  const auto direct = D1(c.s, c.r, D1Mode::direct, {}, opts);
  j["D1"] = {{"closed", num(closed.value)},
             {"direct", num(direct.value)},
             {"direct_truncation_bound", num(direct.truncation_bound)},
             {"abs_difference", num(std::fabs(closed.value - direct.value))}};
  const auto er = E_r_and_Cprime(c.s, c.r, opts);
  j["D2"] = {{"bound", num(D2_bound(c.s, c.r, opts))},
             {"E", num(er.E.value)},
             {"Cprime", num(er.Cprime.value)},
             {"chi4_product", num(D2_chi4(c.s, c.r, opts).value)}};
  if (c.s > c.r + 2.0) {
    const auto sh = shifted_series_residual(c.s, c.r, 1'000'000, opts);
    j["shifted_series"] = {{"direct", num(sh.direct)},
                           {"d1_part", num(sh.d1_part)},
                           {"residual", num(sh.residual)},
                           {"residual_bound", num(sh.residual_bound)},
                           {"residual_bound_ok", sh.residual_bound_ok},
                           {"dsigma_direct", num(sh.dsigma_direct)},
                           {"dsigma_closed", num(sh.dsigma_closed)},
                           {"truncation", num(sh.truncation)}};
  } else {
    j["shifted_series"] = nullptr;
  }
  j["prime_cutoff"] = c.prime_cutoff;
  return dump_json(j);
}

std::string cmd_saddle(const RunConfig& c) {
  const SaddleMode mode = parse_saddle_mode(c.mode);
  const SaddlePoint sp = solve_saddle(c.n_real, c.u, c.r, mode);
  Json j;
  j["n"] = c.n_real;
  j["r"] = c.r;
  j["u"] = c.u;
  j["mode"] = to_string(mode);
  j["tau"] = num(sp.tau);
  j["residual"] = num(sp.residual);
  j["F"] = num(sp.F_val);
  j["F_g"] = num(sp.F_g);
  j["F_gg"] = num(sp.F_gg);
  j["F_ggg"] = num(sp.F_ggg);
  j["B2"] = num(sp.B2);
  j["theta_n"] = num(sp.theta_n);
  if (c.u == 1.0) {
    const MeanVariance mv = mean_variance_saddle(c.n_real, c.r, mode);
    j["mu"] = num(mv.mu);
    j["nu2"] = num(mv.nu2);
    j["degenerate"] = mv.degenerate;
  } else {
    // mean and variance are defined at u = 1 only
    j["mu"] = nullptr;
    j["nu2"] = nullptr;
    j["degenerate"] = nullptr;
  }
  return dump_json(j);
}

Json clt_summary(const CltReport& rep) {
  Json j;
  j["r"] = rep.r;
  j["n_list"] = rep.n_list;
  j["excluded_count"] = rep.excluded_count;
  j["exclusion_rate"] = num(rep.exclusion_rate);
  j["ks_trend_ok"] = rep.ks_trend_ok;
  j["ks_trend_points"] = rep.ks_trend_points;
  auto fit = [](const LinearFit& f) {
    return Json{{"slope", num(f.slope)}, {"intercept", num(f.intercept)}, {"residual", num(f.residual)},
                {"points", f.points}};
  };
  j["exponent_fit_mean"] = fit(rep.exponent_fit_mean);
  j["exponent_fit_var"] = fit(rep.exponent_fit_var);
  return j;
}

std::string clt_csv(const CltReport& rep) {
  std::ostringstream os;
  os << "n,mean_exact,var_exact,mu_saddle,nu2_saddle,mu_saddle_general,nu2_saddle_general,ks_distance,"
        "ks_saddle_general,ks_signed,negativity_count,negative_mass,degenerate,excluded,reason\n";
  for (const auto& row : rep.rows)
    os << row.n << ',' << format_double(row.mean_exact) << ',' << format_double(row.var_exact) << ','
       << format_double(row.mu_saddle) << ',' << format_double(row.nu2_saddle) << ','
       << format_double(row.mu_saddle_general) << ',' << format_double(row.nu2_saddle_general) << ','
       << format_double(row.ks_distance) << ',' << format_double(row.ks_saddle_general) << ','
       << format_double(row.ks_signed) << ',' << row.negativity_count << ',' << format_double(row.negative_mass)
       << ',' << (row.degenerate ? 1 : 0) << ',' << (row.excluded ? 1 : 0) << ',' << row.reason << '\n';
  return os.str();
}

std::string cmd_clt_report(const RunConfig& c, std::ostream& out) {
  const CltReport rep = clt_report(c.r, c.n_list);
  if (!c.summary.empty()) emit(c.summary, dump_json(clt_summary(rep)), out);
  if (c.format == "csv") return clt_csv(rep);
  Json j = clt_summary(rep);
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"n", row.n},
                    {"mean_exact", num(row.mean_exact)},
                    {"var_exact", num(row.var_exact)},
                    {"mu_saddle", num(row.mu_saddle)},
                    {"nu2_saddle", num(row.nu2_saddle)},
                    {"mu_saddle_general", num(row.mu_saddle_general)},
                    {"nu2_saddle_general", num(row.nu2_saddle_general)},
                    {"ks_distance", num(row.ks_distance)},
                    {"ks_saddle_general", num(row.ks_saddle_general)},
                    {"ks_signed", num(row.ks_signed)},
                    {"negativity_count", row.negativity_count},
                    {"negative_mass", num(row.negative_mass)},
                    {"degenerate", row.degenerate},
                    {"excluded", row.excluded},
                    {"reason", row.reason}});
  j["rows"] = std::move(rows);
  return dump_json(j);
}

std::string cmd_tail(const RunConfig& c) {
  const TailReport rep = tail_check(build_table(c.r, c.n), c.n, c.x_grid, c.slack);
  if (c.format == "json") {
    Json j;
    j["n"] = rep.n;
    j["r"] = rep.r;
    j["T"] = num(rep.T);
    j["slack"] = rep.slack;
    j["excluded"] = rep.excluded;
    j["reason"] = rep.reason;
    j["self_consistent"] = rep.self_consistent;
    j["violations"] = rep.violations;
    Json recs = Json::array();
    for (const auto& t : rep.records)
      recs.push_back({{"x", t.x}, {"side", t.side}, {"branch", t.branch}, {"lhs_prob", num(t.lhs_prob)},
                      {"bound", num(t.bound)}, {"ok", t.ok}});
    j["records"] = std::move(recs);
    return dump_json(j);
  }
  std::ostringstream os;
  os << "x,side,branch,lhs_prob,bound,ok,excluded\n";
  for (const auto& t : rep.records)
    os << format_double(t.x) << ',' << t.side << ',' << t.branch << ',' << format_double(t.lhs_prob) << ','
       << format_double(t.bound) << ',' << (t.ok ? 1 : 0) << ',' << (rep.excluded ? 1 : 0) << '\n';
  return os.str();
}

std::string cmd_mgf(const RunConfig& c) {
  const MgfProfile prof = mgf_profile(build_table(c.r, c.n), c.n, c.theta_grid);
  if (c.format == "json") {
    Json j;
    j["n"] = prof.n;
    j["r"] = prof.r;
    j["blocked"] = prof.blocked;
    j["reason"] = prof.reason;
    Json pts = Json::array();
    for (const auto& p : prof.points)
      pts.push_back({{"theta", p.theta}, {"m_exact", num(p.m_exact)}, {"gauss_target", num(p.gauss_target)},
                     {"rel_deviation", num(p.rel_deviation)}});
    j["points"] = std::move(pts);
    return dump_json(j);
  }
  std::ostringstream os;
  os << "theta,m_exact,gauss_target,rel_deviation,blocked\n";
  for (const auto& p : prof.points)
    os << format_double(p.theta) << ',' << format_double(p.m_exact) << ',' << format_double(p.gauss_target) << ','
       << format_double(p.rel_deviation) << ',' << (prof.blocked ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact and asymptotic tools for partitions with divisor-function gaps", "sigmapart"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", c.workers, "worker threads; output bytes never depend on it")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--output", c.output, "output path, - for stdout");

  auto add_r = [&](CLI::App* sub, int lo) {
    sub->add_option("--r", c.r, "divisor exponent")->check(CLI::Range(lo, 8));
  };
  auto add_euler = [&](CLI::App* sub) {
    sub->add_option("--prime-cutoff", c.prime_cutoff, "largest prime in Euler products")
        ->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{100000000}));
    sub->add_option("--tolerance", c.tolerance, "Euler product convergence tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
  };

  auto* table = app.add_subcommand("table", "exact coefficients p(n,k)");
  add_r(table, 1);
  table->add_option("--N", c.N, "largest n")->check(CLI::Range(std::size_t{1}, std::size_t{5000}));
  table->add_option("--K", c.K, "largest k, 0 means N")->check(CLI::Range(std::size_t{0}, std::size_t{5000}));
  table->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* constants = app.add_subcommand("constants", "Euler-product constants");
  add_r(constants, 1);
  add_euler(constants);

  auto* dcheck = app.add_subcommand("dirichlet-check", "Dirichlet series identities at one (s, r)");
  add_r(dcheck, 1);
  dcheck->add_option("--s", c.s, "real exponent")->check(CLI::Range(1.5, 50.0));
  add_euler(dcheck);

  auto* saddle = app.add_subcommand("saddle", "saddle point and its derivatives");
  add_r(saddle, 1);
  saddle->add_option("--n", c.n_real, "target n")->check(CLI::Range(1e-3, 1e9));
  saddle->add_option("--u", c.u, "marking variable")->check(CLI::Range(0.5, 2.0));
  saddle->add_option("--mode", c.mode, "general or paper_literal")
      ->check(CLI::IsMember({"general", "paper_literal"}));

  auto* clt = app.add_subcommand("clt-report", "exact distributions against the Gaussian limit");
  add_r(clt, 1);
  clt->add_option("--n-list", c.n_list, "increasing n values")->delimiter(',');
  clt->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  clt->add_option("--summary", c.summary, "also write the JSON summary here");

  auto* tail = app.add_subcommand("tail", "tail probabilities against the Chernoff-type bound");
  add_r(tail, 1);
  tail->add_option("--n", c.n, "row index")->check(CLI::Range(std::size_t{2}, kDefaultCltLimit));
  tail->add_option("--x-grid", c.x_grid, "nonnegative thresholds")->delimiter(',');
  tail->add_option("--slack", c.slack, "bound multiplied by 1 + slack")->check(CLI::Range(0.0, 100.0));
  tail->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* mgf = app.add_subcommand("mgf", "exact moment generating function of the standardized row");
  add_r(mgf, 1);
  mgf->add_option("--n", c.n, "row index")->check(CLI::Range(std::size_t{1}, kDefaultCltLimit));
  mgf->add_option("--theta-grid", c.theta_grid, "values in [-2, 2]")->delimiter(',');
  mgf->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "invariant suite over every module");
  verify->add_flag("--quick", c.quick, "smaller sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    set_worker_count(c.workers);
    if (*table) {
      emit(c.output, cmd_table(c), out);
    } else if (*constants) {
      emit(c.output, cmd_constants(c), out);
    } else if (*dcheck) {
      emit(c.output, cmd_dirichlet_check(c), out);
    } else if (*saddle) {
      emit(c.output, cmd_saddle(c), out);
    } else if (*clt) {
      emit(c.output, cmd_clt_report(c, out), out);
    } else if (*tail) {
      emit(c.output, cmd_tail(c), out);
    } else if (*mgf) {
      emit(c.output, cmd_mgf(c), out);
    } else if (*verify) {
      const VerifyReport rep = run_verify(c.quick);
      emit(c.output, dump_json(rep.to_json()), out);
      return rep.hard_failures() == 0 ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    err << "invariant failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sigmapart
