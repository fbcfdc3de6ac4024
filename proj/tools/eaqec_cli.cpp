#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eaqec/bounds.hpp"
#include "eaqec/feasibility.hpp"
#include "eaqec/pauli.hpp"
#include "eaqec/search.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

json bound_json(const eaqec::bounds::BoundResult& r) {
  json out;
  out["method"] = r.method;
  out["applicable"] = r.applicable;
  if (!r.applicable) {
    out["reason"] = r.reason;
    return out;
  }
  out["value"] = r.value.get_num().get_str() + "/" + r.value.get_den().get_str();
  out["decimal"] = eaqec::decimal_string(r.value, 6);
  if (r.params.t >= 0) out["t"] = r.params.t;
  if (r.params.a)
    out["a"] = {{"exact", r.params.a->get_num().get_str() + "/" +
                              r.params.a->get_den().get_str()},
                {"decimal", eaqec::decimal_string(*r.params.a, 8)}};
  if (r.params.l_argmax >= 0) out["l_argmax"] = r.params.l_argmax;
  if (r.params.tie) out["tie"] = true;
  if (!r.params.note.empty()) out["note"] = r.params.note;
  return out;
}

void emit_report(const std::string& command, const json& params, const json& result,
                 double ms) {
  json rep;
  rep["command"] = command;
  rep["params"] = params;
  rep["result"] = result;
  rep["timing_ms"] = ms;
  rep["version"] = kVersion;
  std::cout << rep.dump(2) << "\n";
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified bounds, feasibility and search for entanglement-assisted quantum codes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  int threads = 1;
  long seed = 0;
  app.add_option("--threads", threads, "worker parallelism for table/search/feasibility");
  app.add_option("--seed", seed, "accepted for interface stability; no certified path is randomized");

  // ---- bound ----
  auto* bound = app.add_subcommand("bound", "certified upper bounds on code size");
  std::string kind;
  long bn = 0, bd = 0, bc = 0, bk = 0, grid_points = 63;
  bool nondegenerate = false;
  double a_min = 0.0, a_max = -1.0, a_step = 0.001;
  bound->add_option("kind", kind, "singleton|refined-singleton|hamming|lp1|lp1-int|gv")
      ->required();
  bound->add_option("-n", bn, "code length")->required();
  bound->add_option("-d", bd, "minimum distance")->required();
  bound->add_option("-c", bc, "ebits")->default_val(0);
  bound->add_option("-k", bk, "logical qubits (gv only)")->default_val(0);
  bound->add_flag("--nondegenerate", nondegenerate, "nondegenerate variant (hamming)");
  bound->add_option("--a-min", a_min, "grid start (refined-singleton)");
  bound->add_option("--a-max", a_max, "grid end (refined-singleton), default n+c");
  bound->add_option("--a-step", a_step, "grid step (refined-singleton)");
  bound->add_option("--grid", grid_points, "coarse grid points (lp1)");

  // ---- feasible ----
  auto* feas = app.add_subcommand("feasible", "integer-program compatibility verdict");
  long fn = 0, fk = 0, fd = 0, fc = 0, node_budget = 100000, pivot_budget = 2000000;
  feas->add_option("-n", fn)->required();
  feas->add_option("-k", fk)->required();
  feas->add_option("-d", fd)->required();
  feas->add_option("-c", fc)->required();
  feas->add_option("--node-budget", node_budget);
  feas->add_option("--pivot-budget", pivot_budget);

  // ---- search ----
  auto* srch = app.add_subcommand("search", "exhaustive standard-form check-matrix search");
  long sn = 0, sk = 0, sd = 0, sc = 0, budget = 100000000;
  srch->add_option("-n", sn)->required();
  srch->add_option("-k", sk)->required();
  srch->add_option("-d", sd)->required();
  srch->add_option("-c", sc)->required();
  srch->add_option("--budget", budget, "candidate budget");

  // ---- table ----
  auto* table = app.add_subcommand("table", "regenerate bound tables as CSV");
  std::string mode = "nt", out_path;
  long t_max = 6, n_max = 8;
  table->add_option("--mode", mode, "nt|max-entanglement")->required();
  table->add_option("--t-max", t_max, "largest t for the nt table");
  table->add_option("--n-max", n_max, "largest n for max-entanglement cells");
  table->add_option("--out", out_path, "output file (default stdout)");
  table->add_option("--node-budget", node_budget);

  // ---- asymptote ----
  auto* asym = app.add_subcommand("asymptote", "asymptotic rate curves as CSV");
  std::string rho_arg = "max";
  double grid_step = 0.01;
  std::string asym_out;
  asym->add_option("--rho", rho_arg, "entanglement rate, number or 'max'")->required();
  asym->add_option("--grid", grid_step, "delta grid step")->required();
  asym->add_option("--out", asym_out, "output file (default stdout)");

  // ---- verify-witness ----
  auto* verw = app.add_subcommand("verify-witness", "check a stored check matrix");
  std::string wfile;
  long wn = 0, wk = 0, wd = 0, wc = 0;
  verw->add_option("--file", wfile)->required();
  verw->add_option("-n", wn)->required();
  verw->add_option("-k", wk)->required();
  verw->add_option("-d", wd)->required();
  verw->add_option("-c", wc)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    if (*bound) {
      using namespace eaqec;
      json params = {{"kind", kind}, {"n", bn}, {"d", bd}, {"c", bc}};
      bounds::BoundResult r;
      if (kind == "singleton") {
        r = bounds::singleton_bound(bn, bd, bc);
      } else if (kind == "refined-singleton") {
        if (a_max < 0) a_max = static_cast<double>(bn + bc);
        r = bounds::refined_singleton(
            bn, bd, bc, Rat(static_cast<long>(a_min * 1000), 1000),
            Rat(static_cast<long>(a_max * 1000), 1000),
            Rat(static_cast<long>(a_step * 1000000), 1000000));
      } else if (kind == "hamming") {
        r = bounds::hamming_bound(bn, bd, bc, !nondegenerate);
        params["nondegenerate"] = nondegenerate;
      } else if (kind == "lp1") {
        r = bounds::lp1_bound(bn, bd, bc, grid_points);
      } else if (kind == "lp1-int") {
        r = bounds::lp1_integer_bound(bn, bd, bc);
      } else if (kind == "gv") {
        params["k"] = bk;
        bool ok = bounds::gv_exists(bn, bk, bd, bc);
        json res = {{"method", "gv"}, {"exists", ok}};
        emit_report("bound gv", params, res, elapsed_ms(start));
        return 0;
      } else {
        std::cerr << "unknown bound kind: " << kind << "\n";
        return 2;
      }
      emit_report("bound " + kind, params, bound_json(r), elapsed_ms(start));
      return 0;
    }

    if (*feas) {
      eaqec::feasibility::CodeParams p{fn, fk, fd, fc};
      eaqec::lpsolver::SolveOptions opt;
      opt.node_budget = node_budget;
      opt.pivot_budget = pivot_budget;
      auto res = eaqec::feasibility::code_compatible(p, opt, threads);
      std::cout << eaqec::feasibility::report_json(p, res, elapsed_ms(start) / 1000.0)
                << "\n";
      return res.status == eaqec::lpsolver::Status::ResourceLimit ? 3 : 0;
    }

    if (*srch) {
      auto res = eaqec::search::exists_by_search(sn, sk, sd, sc, budget);
      json params = {{"n", sn}, {"k", sk}, {"d", sd}, {"c", sc}};
      json result;
      result["outcome"] = res.outcome == eaqec::search::Outcome::Exists ? "exists"
                          : res.outcome == eaqec::search::Outcome::NonExistent
                              ? "nonexistent"
                              : "inconclusive";
      result["candidates_examined"] = res.candidates;
      result["admissible_candidates"] = res.admissible_count;
      if (res.witness) result["witness"] = eaqec::pauli::format_check_matrix(res.witness->rows);
      emit_report("search", params, result, elapsed_ms(start));
      return res.outcome == eaqec::search::Outcome::Inconclusive ? 3 : 0;
    }

    if (*table) {
      std::ofstream file;
      std::ostream& out = open_out(file, out_path);
      if (mode == "nt") {
        out << "t,N\n";
        for (long t = 2; t <= t_max; ++t)
          out << t << "," << eaqec::bounds::hamming_threshold(t) << "\n";
      } else if (mode == "max-entanglement") {
        eaqec::lpsolver::SolveOptions opt;
        opt.node_budget = node_budget;
        out << "n,k,c,d_upper,resolved\n";
        for (long n = 3; n <= n_max; ++n)
          for (long k = 1; k <= n - 1; ++k) {
            auto scan = eaqec::feasibility::lp_distance_bound(n, k, n - k, 0, opt, threads);
            out << n << "," << k << "," << (n - k) << "," << scan.upper << ","
                << (scan.resolved ? "yes" : "no") << "\n";
          }
      } else {
        std::cerr << "unknown table mode: " << mode << "\n";
        return 2;
      }
      return 0;
    }

    if (*asym) {
      std::optional<double> rho;
      if (rho_arg != "max") rho = std::stod(rho_arg);
      if (grid_step <= 0) {
        std::cerr << "grid step must be positive\n";
        return 2;
      }
      std::vector<double> deltas;
      for (double x = 0.0; x < 1.0; x += grid_step) deltas.push_back(x);
      auto rows = eaqec::bounds::asymptotic_rates(deltas, rho);
      std::ofstream file;
      std::ostream& out = open_out(file, asym_out);
      eaqec::bounds::write_rate_csv(out, rows);
      return 0;
    }

    if (*verw) {
      std::ifstream in(wfile);
      if (!in) {
        std::cerr << "cannot open " << wfile << "\n";
        return 2;
      }
      auto rows = eaqec::pauli::parse_check_matrix(in, wn);
      eaqec::search::CheckMatrix h{wn, rows};
      bool adm = eaqec::search::admissible(h, wc);
      bool dist = adm && eaqec::search::verify_distance(h, wn, wk, wc, wd);
      json params = {{"n", wn}, {"k", wk}, {"d", wd}, {"c", wc}, {"file", wfile}};
      json result = {{"admissible", adm}, {"distance_ok", dist}};
      emit_report("verify-witness", params, result, elapsed_ms(start));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
