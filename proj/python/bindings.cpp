#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sigmapart/arith.hpp"
#include "sigmapart/cli.hpp"
#include "sigmapart/cltlab.hpp"
#include "sigmapart/dirichlet.hpp"
#include "sigmapart/partition.hpp"
#include "sigmapart/saddle.hpp"
#include "sigmapart/verify.hpp"

namespace py = pybind11;
using namespace sigmapart;

namespace {

py::int_ to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

py::object fraction(const mpq_class& q) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(to_py(q.get_num()), to_py(q.get_den()));
}

}  // namespace

PYBIND11_MODULE(_sigmapart, m) {
  m.doc() = "Exact and asymptotic tools for partitions with divisor-function gaps";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  m.def("sigma_r", [](std::uint64_t n, int r) { return to_py(sigma_r(n, r)); }, py::arg("n"), py::arg("r"));
  m.def("ramanujan_sum", &ramanujan_sum, py::arg("m"), py::arg("n"));
  m.def(
      "multiplicative_basics",
      [](std::uint64_t n) {
        const auto b = multiplicative_basics(n);
        return py::make_tuple(b.mu, b.phi, b.omega);
      },
      py::arg("n"));
  m.def("shifted_ramanujan_identity_residual",
        [](std::uint64_t mm, std::uint64_t n) { return shifted_ramanujan_identity_residual(mm, n); }, py::arg("m"),
        py::arg("n"));

  m.def(
      "build_table",
      [](int r, std::size_t N, std::size_t K) {
        const auto t = build_table(r, N, K);
        py::list rows;
        for (std::size_t n = 0; n <= t.N; ++n) {
          py::list row;
          for (std::size_t k = 0; k <= std::min(n, t.K); ++k) row.append(to_py(t.at(n, k)));
          rows.append(row);
        }
        return rows;
      },
      py::arg("r"), py::arg("N"), py::arg("K") = 0, "rows[n][k] = p(n, k) as Python ints");
  m.def(
      "exact_distribution",
      [](int r, std::size_t n) {
        const auto d = exact_distribution(build_table(r, n), n);
        py::list pmf;
        for (const auto& q : d.pmf) pmf.append(fraction(q));
        py::dict out;
        out["pmf"] = pmf;
        out["mean"] = fraction(d.mean);
        out["variance"] = fraction(d.variance);
        out["negativity_flags"] = d.negativity_flags;
        out["nonnegative"] = d.nonnegative();
        return out;
      },
      py::arg("r"), py::arg("n"));

  m.def(
      "constant_C", [](int r, std::uint64_t cutoff) { return constant_C(r, {cutoff, 1e-8}).value; }, py::arg("r"),
      py::arg("prime_cutoff") = 1'000'000);
  m.def(
      "D1",
      [](double s, int r, const std::string& mode) {
        return D1(s, r, mode == "direct" ? D1Mode::direct : D1Mode::closed).value;
      },
      py::arg("s"), py::arg("r"), py::arg("mode") = "closed");

  m.def(
      "F_partial",
      [](double g, double u, int r, int jg, int ju) { return F_partial(g, u, r, {jg, ju}); }, py::arg("gamma"),
      py::arg("u"), py::arg("r"), py::arg("j_gamma") = 0, py::arg("j_u") = 0);
  m.def(
      "solve_saddle",
      [](double n, double u, int r, const std::string& mode) {
        const auto sp = solve_saddle(n, u, r, parse_saddle_mode(mode));
        py::dict out;
        out["tau"] = sp.tau;
        out["residual"] = sp.residual;
        out["F"] = sp.F_val;
        out["F_g"] = sp.F_g;
        out["F_gg"] = sp.F_gg;
        out["B2"] = sp.B2;
        out["theta_n"] = sp.theta_n;
        return out;
      },
      py::arg("n"), py::arg("u") = 1.0, py::arg("r") = 2, py::arg("mode") = "general");
  m.def(
      "mean_variance_saddle",
      [](double n, int r, const std::string& mode) {
        const auto mv = mean_variance_saddle(n, r, parse_saddle_mode(mode));
        return py::make_tuple(mv.mu, mv.nu2);
      },
      py::arg("n"), py::arg("r") = 2, py::arg("mode") = "general");

  m.def(
      "ks_trend",
      [](int r, const std::vector<std::size_t>& n_list) {
        const auto rep = clt_report(r, n_list);
        py::list rows;
        for (const auto& row : rep.rows) {
          py::dict d;
          d["n"] = row.n;
          d["mean_exact"] = row.mean_exact;
          d["var_exact"] = row.var_exact;
          d["ks_distance"] = row.ks_distance;
          d["ks_signed"] = row.ks_signed;
          d["excluded"] = row.excluded;
          d["negativity_count"] = row.negativity_count;
          rows.append(d);
        }
        return py::make_tuple(rep.ks_trend_ok, rows);
      },
      py::arg("r"), py::arg("n_list"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> all = {"sigmapart"};
        all.insert(all.end(), args.begin(), args.end());
        std::vector<char*> argv;
        for (auto& a : all) argv.push_back(a.data());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end in process; returns (exit_code, stdout, stderr).");
}
