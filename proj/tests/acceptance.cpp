// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sigmapart/arith.hpp"
#include "sigmapart/cli.hpp"
#include "sigmapart/cltlab.hpp"
#include "sigmapart/dirichlet.hpp"
#include "sigmapart/partition.hpp"
#include "sigmapart/saddle.hpp"
#include "sigmapart/special.hpp"

using namespace sigmapart;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.ok;
  std::ostringstream line;
  if (time_limit > 0 && secs >= time_limit) {
    ok = false;
    line << " [over time limit " << time_limit << " s]";
  }
  if (!ok) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)%s\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              line.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string run_verify_cli(const char* workers) {
  std::vector<std::string> args = {"sigmapart", "--workers", workers, "verify"};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str();
}

}  // namespace

int main() {
  criterion(1, "constants C(1) and zeta(2)C(1)", 5.0, [] {
    EulerOptions opts;
    opts.prime_cutoff = 1'000'000;
    const double c = constant_C(1, opts).value;
    const double z = zeta_real(2) * c;
    return Outcome{std::fabs(c - 1.339784) < 1e-5 && std::fabs(z - 2.20386) < 1e-4,
                   "C(1)=" + fmt(c) + " zeta(2)C(1)=" + fmt(z)};
  });

  criterion(2, "build_table equals oracle_table", 30.0, [] {
    bool ok = true;
    int tables = 0, enumerations = 0;
    for (int r : {2, 3})
      for (std::size_t N = 1; N <= 12; ++N) {
        const auto o = oracle_table(r, N);
        const auto b = build_table(r, N);
        ok = ok && o.polynomial == b;
        if (o.enumeration) {
          ok = ok && *o.enumeration == b;
          ++enumerations;
        }
        ++tables;
      }
    const bool negative_gap_covered = !oracle_table(2, 10).enumeration && make_gap_sequence(2, 10).gap(10) < 0;
    return Outcome{ok && negative_gap_covered, std::to_string(tables) + " tables, " + std::to_string(enumerations) +
                                                   " with enumeration oracle, negative-gap rows r=2 N=10..12 covered"};
  });

  criterion(3, "shifted Ramanujan identity", 10.0, [] {
    double worst = 0.0;
    for (std::uint64_t m = 1; m <= 30; ++m)
      for (std::uint64_t n = 1; n <= 100; ++n) worst = std::max(worst, shifted_ramanujan_identity_residual(m, n));
    return Outcome{worst < 1e-9, "max residual " + fmt(worst)};
  });

  criterion(4, "D1 closed vs direct", 60.0, [] {
    const D1Truncation tr{2000, 20000};
    const double a = std::fabs(D1(3, 2, D1Mode::closed).value - D1(3, 2, D1Mode::direct, tr).value);
    const double b = std::fabs(D1(2, 1, D1Mode::closed).value - D1(2, 1, D1Mode::direct, tr).value);
    return Outcome{a < 1e-3 && b < 1e-3, "|diff| (3,2)=" + fmt(a) + " (2,1)=" + fmt(b)};
  });

  criterion(5, "sigma_r Ramanujan expansion", 0.0, [] {
    const auto s = sigma_ramanujan_series(50, 2, 100000);
    double worst = 0.0;
    for (std::uint64_t n = 1; n <= 50; ++n) {
      const double v = sigma_r(n, 2).get_d();
      worst = std::max(worst, std::fabs(s[n] - v) / v);
    }
    return Outcome{worst < 1e-3, "max relative error " + fmt(worst)};
  });

  criterion(6, "Mellin leading order", 0.0, [] {
    bool ok = true;
    std::string d;
    for (int r : {2, 3})
      for (int j : {0, 1}) {
        const auto m = mellin_ratio_check(j, {0.1, 0.05, 0.02}, 1.0, r);
        ok = ok && std::fabs(m.ratios.back() - 1.0) < 0.05 && m.monotone;
        d += " r" + std::to_string(r) + "j" + std::to_string(j) + "=" + fmt(m.ratios.back()) +
             (m.monotone ? "" : "(non-monotone)");
      }
    return Outcome{ok, "final ratios" + d};
  });

  criterion(7, "partials vs finite differences", 0.0, [] {
    double worst = 0.0;
    int count = 0;
    for (int r : {2, 3})
      for (double g : {0.05, 0.1})
        for (double u : {0.5, 1.0, 1.5})
          for (const auto& d : all_requests()) {
            if (d.j_gamma + d.j_u == 0) continue;
            DerivativeRequest lo = d;
            double fd;
            if (d.j_gamma > 0) {
              --lo.j_gamma;
              const double h = 1e-4 * g;
              fd = (F_partial(g + h, u, r, lo) - F_partial(g - h, u, r, lo)) / (2 * h);
            } else {
              --lo.j_u;
              const double h = 1e-4 * u;
              fd = (F_partial(g, u + h, r, lo) - F_partial(g, u - h, r, lo)) / (2 * h);
            }
            worst = std::max(worst, std::fabs(F_partial(g, u, r, d) - fd) / std::fabs(fd));
            ++count;
          }
    return Outcome{worst < 1e-5, std::to_string(count) + " partials, max relative error " + fmt(worst)};
  });

  criterion(8, "saddle residuals", 0.0, [] {
    bool ok = true;
    double worst = 0.0;
    for (int r : {2, 3})
      for (auto mode : {SaddleMode::general, SaddleMode::paper_literal})
        for (double n : {1.0, 10.0, 100.0, 1000.0}) {
          const auto sp = solve_saddle(n, 1.0, r, mode);
          ok = ok && sp.residual < 1e-9 * std::max(1.0, n);
          worst = std::max(worst, sp.residual / std::max(1.0, n));
        }
    return Outcome{ok, "max residual/max(1,n) " + fmt(worst)};
  });

  criterion(9, "exponent fit of the saddle mean", 0.0, [] {
    bool ok = true;
    std::string d;
    for (int r : {2, 3}) {
      const auto f = exponent_fit(r, {100, 200, 400, 800, 1600});
      ok = ok && std::fabs(f.mean.slope - f.target) < 0.1;
      d += " r=" + std::to_string(r) + ": slope " + fmt(f.mean.slope) + " target " + fmt(f.target) +
           " (literal-eta slope " + fmt(f.mean_literal.slope) + ", variance slope " + fmt(f.var.slope) + ")";
    }
    return Outcome{ok, "general saddle;" + d};
  });

  criterion(10, "CLT trend on positive rows", 0.0, [] {
    const auto table = build_table(2, 400);
    const auto rep = clt_report(table, {50, 100, 200, 400});
    // MGF approach on positive rows only
    bool mgf_ok = true;
    std::vector<std::size_t> positive;
    for (const auto& row : rep.rows)
      if (!row.excluded && !row.degenerate) positive.push_back(row.n);
    for (double theta : {0.25, 0.5})
      for (std::size_t i = 1; i < positive.size(); ++i) {
        const double prev = mgf_profile(table, positive[i - 1], {theta}).points[0].rel_deviation;
        const double cur = mgf_profile(table, positive[i], {theta}).points[0].rel_deviation;
        mgf_ok = mgf_ok && cur <= prev;
      }
    std::string d = "excluded " + std::to_string(rep.excluded_count) + " of " + std::to_string(rep.rows.size()) +
                    " rows (negative coefficients)";
    if (positive.size() < 2) d += "; vacuous, fewer than two positive rows";
    d += "; signed-row diagnostics ks";
    for (const auto& row : rep.rows) d += " " + fmt(row.ks_signed);
    d += ", mgf dev(0.5)";
    for (std::size_t n : {50, 100, 200, 400}) d += " " + fmt(mgf_profile(table, n, {0.5}).points[0].rel_deviation);
    return Outcome{rep.ks_trend_ok && mgf_ok, d};
  });

  criterion(11, "tail report at n=400", 0.0, [] {
    const auto rep = tail_check(build_table(2, 400), 400, {1.0, 2.0}, 0.5);
    const double T = tail_threshold(400, 2);
    bool branch_ok = rep.records.size() == 4;
    for (const auto& rec : rep.records) {
      const double base = rec.x <= T ? std::exp(-rec.x * rec.x / 2) : std::exp(-T * rec.x / 2);
      branch_ok = branch_ok && rec.branch == (rec.x <= T ? "gaussian" : "linear") &&
                  std::fabs(rec.bound - 1.5 * base) <= 1e-15 * rec.bound;
    }
    std::string d = "T=" + fmt(T) + " violations " + std::to_string(rep.violations) +
                    (rep.excluded ? "; row has negative coefficients, no positive-row check possible" : "");
    for (const auto& rec : rep.records) d += "; " + rec.side + " x=" + fmt(rec.x) + " lhs " + fmt(rec.lhs_prob);
    return Outcome{rep.self_consistent && branch_ok, d};
  });

  criterion(12, "verify determinism", 0.0, [] {
    const std::string a = run_verify_cli("1");
    const std::string b = run_verify_cli("1");
    const std::string c = run_verify_cli("4");
    const bool ok = a == b && a == c && a.rfind("0\n", 0) == 0;
    return Outcome{ok, "three full verify runs (workers 1, 1, 4): " + std::string(ok ? "identical, exit 0" : "differ")};
  });

  std::printf("%d failure(s)\n", failures);
  return failures;
}
