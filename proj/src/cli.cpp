#include "ucr/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ucr/characters.hpp"
#include "ucr/equivalence.hpp"
#include "ucr/errors.hpp"
#include "ucr/io.hpp"
#include "ucr/suites.hpp"

namespace ucr {

namespace {

using io::Json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json input_echo(const std::string& path, const std::string& bytes,
                const RelationMatrix& rel) {
  Json j;
  j["path"] = path;
  j["digest"] = io::digest64(bytes);
  j["n"] = rel.n();
  j["m"] = rel.m();
  return j;
}

std::string status_name(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::Equivalent:
      return "Equivalent";
    case EquivalenceStatus::ExchangeEquivalent:
      return "ExchangeEquivalent";
    case EquivalenceStatus::Disproved:
      return "Disproved";
    case EquivalenceStatus::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

Json case_2x2_report(const RelationMatrix& rel, const CoreSubspaces& core) {
  Json j;
  const int d = core.d_kernel;
  static const char* labels[] = {"I", "II", "III", "IV", "V"};
  j["d_kernel"] = d;
  j["label"] = labels[std::min(std::max(d, 0), 4)];
  switch (d) {
    case 0:
      j["omega"] = "(closed B2 x {0}) u ({0} x closed B2)";
      j["core"] = "{(0,0)}";
      break;
    case 1: {
      // A rank-one fixed vector lets the variety reach points with both
      // coordinates nonzero.
      Eigen::ComplexEigenSolver<Matrix> eig(rel.matrix());
      Vector fixed = Vector::Zero(4);
      for (int i = 0; i < 4; ++i) {
        if (std::abs(eig.eigenvalues()(i) - Complex(1, 0)) <= 1e-9) {
          fixed = eig.eigenvectors().col(i);
        }
      }
      const Complex det = fixed(0) * fixed(3) - fixed(1) * fixed(2);
      j["omega"] = std::abs(det) <= 1e-9
                       ? "(closed B2 x {0}) u ({0} x closed B2) u rank-one "
                         "points of the fixed vector"
                       : "(closed B2 x {0}) u ({0} x closed B2)";
      j["core"] = "{(0,0)}";
      break;
    }
    case 2:
      j["omega"] = "determined by the one-dimensional fixed conditions";
      j["core"] = "(ball of span Z) x (ball of span W); see core bases";
      break;
    case 3: {
      const CanonicalFormD3 cf = canonical_d3(rel);
      j["canonical_a"] = cf.a;
      j["canonical_lambda"] = io::complex_to_json(cf.lambda);
      if (cf.a <= 1e-9) {
        j["omega"] =
            "{(z1,z2,w1,0)} u {(z1,0,w1,w2)} in canonical coordinates";
        j["core"] = "{(z1,0,w1,0): |z1|<=1, |w1|<=1} in canonical coordinates";
      } else {
        std::ostringstream os;
        os << "{a z1 w1 + sqrt(1-a^2) z2 w2 = 0} with a = " << cf.a
           << ", in canonical coordinates";
        j["omega"] = os.str();
        j["core"] = "{(0,0)}";
      }
      break;
    }
    case 4:
      j["omega"] = "closed B2 x closed B2";
      j["core"] = "closed B2 x closed B2";
      break;
    default:
      break;
  }
  return j;
}

int cmd_analyze(const std::string& path, double unitarity_tol, double rank_tol,
                bool timings, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string bytes = slurp(path);
  const io::RelationInput input = io::read_relation_text(bytes, unitarity_tol);
  const RelationMatrix& rel = input.rel;

  Json rep;
  rep["command"] = "analyze";
  rep["input"] = input_echo(path, bytes, rel);
  rep["tolerances"] = {{"unitarity", unitarity_tol},
                       {"rank", rank_tol},
                       {"eigenvalue_cluster", 1e-9}};

  const CoreSubspaces core = core_subspaces(rel, rank_tol);
  const InvariantProfile profile = invariant_profile(rel);

  Json result;
  result["unitarity_residual"] = rel.unitarity_residual();
  Json spec = Json::array();
  for (const Complex ev : profile.spectrum) {
    spec.push_back(io::complex_to_json(ev));
  }
  result["spectrum"] = spec;
  result["d_kernel"] = core.d_kernel;
  result["core"] = {{"dim_z", static_cast<int>(core.Z.cols())},
                    {"dim_w", static_cast<int>(core.W.cols())},
                    {"z_basis", io::matrix_to_json(core.Z)},
                    {"w_basis", io::matrix_to_json(core.W)}};
  result["rank_warnings"] = core.ambiguous_singular_values;
  if (rel.n() == 2 && rel.m() == 2) {
    result["case_2x2"] = case_2x2_report(rel, core);
  }
  if (input.permutation) {
    result["permutation"] =
        io::format_cycles(*input.permutation, rel.n(), rel.m());
  }
  rep["result"] = result;
  if (timings) {
    rep["timings_ms"] = {
        {"total", std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count()}};
  }
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_classify(const std::string& path_u, const std::string& path_v,
                 const DecideConfig& config, double unitarity_tol,
                 bool force_numeric, bool timings, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string bytes_u = slurp(path_u);
  const std::string bytes_v = slurp(path_v);
  const io::RelationInput in_u = io::read_relation_text(bytes_u, unitarity_tol);
  const io::RelationInput in_v = io::read_relation_text(bytes_v, unitarity_tol);

  Json rep;
  rep["command"] = "classify";
  rep["inputs"] = {{"u", input_echo(path_u, bytes_u, in_u.rel)},
                   {"v", input_echo(path_v, bytes_v, in_v.rel)}};
  rep["config"] = {{"restarts", config.restarts},
                   {"max_iters", config.max_iters},
                   {"tol", config.tol},
                   {"seed", config.seed}};

  // Two permutation-form inputs take the exact product-conjugacy decision;
  // --force-numeric runs the full pipeline instead (conjugacy is finer than
  // product unitary equivalence).
  EquivalenceVerdict verdict;
  if (!force_numeric && in_u.permutation && in_v.permutation &&
      in_u.rel.n() == in_v.rel.n() && in_u.rel.m() == in_v.rel.m()) {
    verdict = decide_permutation(*in_u.permutation, *in_v.permutation,
                                 in_u.rel.n(), in_u.rel.m());
  } else {
    verdict = decide_numeric(in_u.rel, in_v.rel, config);
  }

  Json result;
  result["status"] = status_name(verdict.status);
  if (verdict.certificate) {
    result["certificate"] = {
        {"A", io::matrix_to_json(verdict.certificate->A)},
        {"B", io::matrix_to_json(verdict.certificate->B)},
        {"exchange", verdict.certificate->exchange},
        {"residual", verdict.certificate->residual},
        {"residual_tolerance", config.tol}};
  } else {
    result["certificate"] = nullptr;
  }
  if (verdict.witness) {
    result["witness"] = {{"invariant", verdict.witness->invariant},
                         {"u_value", verdict.witness->u_value},
                         {"v_value", verdict.witness->v_value}};
  } else {
    result["witness"] = nullptr;
  }
  rep["result"] = result;

  int code = 2;
  if (verdict.status == EquivalenceStatus::Equivalent ||
      verdict.status == EquivalenceStatus::ExchangeEquivalent) {
    code = 0;
  } else if (verdict.status == EquivalenceStatus::Disproved) {
    code = 1;
  }
  rep["exit_code"] = code;
  if (timings) {
    rep["timings_ms"] = {
        {"total", std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count()}};
  }
  out << rep.dump(2) << "\n";
  return code;
}

int cmd_permutations(int n, int m, bool timings, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  Json rep;
  rep["command"] = "permutations";
  rep["n"] = n;
  rep["m"] = m;
  const PermutationClasses classes = permutation_classes(n, m);
  Json cls = Json::array();
  long long total = 1;
  for (int t = 2; t <= n * m; ++t) total *= t;
  const bool with_members = total <= 720;
  for (const auto& members : classes.classes) {
    Json c;
    c["representative"] = io::format_cycles(members.front(), n, m);
    c["size"] = members.size();
    if (with_members) {
      Json mem = Json::array();
      for (const auto& theta : members) {
        mem.push_back(io::format_cycles(theta, n, m));
      }
      c["members"] = mem;
    }
    cls.push_back(std::move(c));
  }
  rep["result"] = {{"class_count", classes.classes.size()},
                   {"permutation_count", total},
                   {"classes", cls}};
  if (timings) {
    rep["timings_ms"] = {
        {"total", std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count()}};
  }
  out << rep.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& path, const std::vector<std::string>& suites,
               const SuiteOptions& options, double unitarity_tol, bool timings,
               std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string bytes = slurp(path);
  const io::RelationInput input = io::read_relation_text(bytes, unitarity_tol);

  Json rep;
  rep["command"] = "verify";
  rep["input"] = input_echo(path, bytes, input.rel);
  rep["degree"] = options.degree;
  rep["seed"] = options.seed;
  rep["tolerances"] = {{"relation", options.relation_tol},
                       {"intertwiner", options.intertwiner_tol},
                       {"nest", options.nest_tol},
                       {"mobius", options.mobius_tol}};

  const auto reports = run_suites(input.rel, suites, options);
  bool all_pass = true;
  Json suites_json = Json::array();
  for (const auto& suite : reports) {
    Json s;
    s["suite"] = suite.suite;
    Json checks = Json::array();
    for (const auto& check : suite.checks) {
      checks.push_back({{"name", check.name},
                        {"value", check.value},
                        {"tolerance", check.tolerance},
                        {"pass", check.pass}});
    }
    s["checks"] = checks;
    s["all_pass"] = suite.all_pass;
    all_pass = all_pass && suite.all_pass;
    suites_json.push_back(std::move(s));
  }
  rep["result"] = {{"suites", suites_json}, {"all_pass", all_pass}};
  if (timings) {
    rep["timings_ms"] = {
        {"total", std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count()}};
  }
  out << rep.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "ucr: analysis and classification of operator algebras from unitary "
      "commutation relations"};
  app.require_subcommand(1);

  double unitarity_tol = 1e-10;
  bool timings = false;
  app.add_option("--unitarity-tol", unitarity_tol,
                 "tolerance for max|u*u - I| on input validation");
  app.add_flag("--timings", timings, "include wall-clock timings in reports");

  std::string path_analyze;
  double rank_tol = 1e-9;
  auto* analyze = app.add_subcommand(
      "analyze", "spectrum, kernel data, core subspaces of one input");
  analyze->add_option("file", path_analyze, "relation matrix JSON file")
      ->required();
  analyze->add_option("--rank-tol", rank_tol,
                      "relative singular value threshold for kernel ranks");

  std::string path_u, path_v;
  DecideConfig config;
  bool force_numeric = false;
  auto* classify = app.add_subcommand(
      "classify", "decide product unitary equivalence of two inputs");
  classify->add_option("u", path_u, "first input")->required();
  classify->add_option("v", path_v, "second input")->required();
  classify->add_option("--restarts", config.restarts, "search restarts");
  classify->add_option("--seed", config.seed, "search seed");
  classify->add_option("--tol", config.tol, "certificate residual tolerance");
  classify->add_option("--max-iters", config.max_iters,
                       "iteration cap per restart");
  classify->add_flag("--force-numeric", force_numeric,
                     "use the numeric pipeline even for permutation-form "
                     "inputs");

  int perm_n = 2, perm_m = 2;
  auto* permutations = app.add_subcommand(
      "permutations",
      "classes of grid permutations under product conjugacy and exchange");
  permutations->add_option("n", perm_n, "rows of the grid")->required();
  permutations->add_option("m", perm_m, "columns of the grid")->required();

  std::string path_verify;
  std::string suite = "all";
  SuiteOptions suite_options;
  auto* verify = app.add_subcommand(
      "verify", "run numerical verification suites on one input");
  verify->add_option("file", path_verify, "relation matrix JSON file")
      ->required();
  verify->add_option("--suite", suite,
                     "relations|commutant|intertwiner|characters|core|mobius|"
                     "all");
  verify->add_option("--degree", suite_options.degree, "truncation degree");
  verify->add_option("--seed", suite_options.seed, "sampling seed");
  verify->add_option("--relation-tol", suite_options.relation_tol,
                     "tolerance for the relation suites");
  verify->add_option("--intertwiner-tol", suite_options.intertwiner_tol,
                     "tolerance for the reversal intertwiner suite");
  verify->add_option("--nest-tol", suite_options.nest_tol,
                     "tolerance for nest representations at core points");
  verify->add_option("--mobius-tol", suite_options.mobius_tol,
                     "tolerance for the lifted automorphism suite");

  std::vector<std::string> argv(args);
  std::vector<char*> raw;
  raw.reserve(argv.size());
  std::string program = "ucr";
  raw.push_back(program.data());
  for (auto& a : argv) raw.push_back(a.data());

  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help goes to stdout with a zero exit.
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(path_analyze, unitarity_tol, rank_tol, timings, out);
    }
    if (classify->parsed()) {
      return cmd_classify(path_u, path_v, config, unitarity_tol, force_numeric,
                          timings, out);
    }
    if (permutations->parsed()) {
      return cmd_permutations(perm_n, perm_m, timings, out);
    }
    if (verify->parsed()) {
      return cmd_verify(path_verify, {suite}, suite_options, unitarity_tol,
                        timings, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no subcommand\n";
  return 3;
}

}  // namespace ucr
