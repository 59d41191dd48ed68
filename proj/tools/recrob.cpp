// Copyright 2026 The recrob Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// recrob: command-line front end for the recoverable-robustness toolkit.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "recrob/io.hpp"
#include "recrob/model.hpp"
#include "recrob/pareto.hpp"
#include "recrob/portfolio.hpp"
#include "recrob/reduction.hpp"
#include "recrob/scalarization.hpp"

namespace {

using namespace recrob;
using io::json;

constexpr int kExitModel = 1;
constexpr int kExitUsage = 2;

int exit_code(Errc code) {
  switch (code) {
    case Errc::ParseError:
    case Errc::DimensionMismatch:
    case Errc::TooFewScenarios:
    case Errc::NonFiniteData:
    case Errc::InvalidArgument:
    case Errc::InvalidNorm:
    case Errc::UnsupportedNorm:
    case Errc::StructureViolation:
    case Errc::ZeroNormal:
      return kExitUsage;
    default:
      return kExitModel;
  }
}

struct Options {
  std::string instance;
  std::string norm;
  std::string out;
  std::string eps = "inf";
  double delta = 0.0;
  std::string order = "radius";
  bool relaxation = false;
  bool rhs_vertices = false;
  bool witness = false;
  std::size_t points = kDefaultSweepPoints;
  std::string mode = "eps";
  std::string csv;
  std::size_t n = 5;
  std::size_t big_n = 5;
  std::uint64_t seed = 0;
  std::string method = "rec-m";
  double rec_it_tol = portfolio::kRecItDefaults.tol;
  unsigned jobs = 1;
};

ExtReal parse_eps(const std::string& s) {
  if (s == "inf" || s == "+inf") return ExtReal::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && std::isfinite(v), Errc::InvalidArgument,
          "--eps expects a finite number or 'inf', got '" + s + "'");
  return v;
}

BlockNorm resolve_norm(const Options& o, const io::Instance& inst) {
  if (!o.norm.empty()) {
    if (o.norm == "l1") return BlockNorm::l1();
    if (o.norm == "l2") return BlockNorm::l2();
    if (o.norm == "linf") return BlockNorm::linf();
    throw Error(Errc::InvalidArgument, "--norm must be l1, l2 or linf");
  }
  return inst.norm.value_or(BlockNorm::l1());
}

io::Instance load(const Options& o, bool hyperplane) {
  io::Instance inst = io::read_instance(o.instance);
  require(inst.hyperplane == hyperplane, Errc::InvalidArgument,
          hyperplane ? "this command needs a hyperplane instance"
                     : "hyperplane instances are only accepted by solve-hyperplanes");
  return inst;
}

void write_json(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  require(out.good(), Errc::InvalidArgument, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

void print_vector(const char* label, const Vector& v) {
  std::cout << label;
  for (double x : v) std::cout << ' ' << io::format_number(x);
  std::cout << '\n';
}

void print_solution(const RecoverableSolution& sol, const UncertainProblem& p) {
  std::cout << "r " << (sol.radius.is_finite() ? io::format_number(sol.radius.value()) : "inf") << '\n';
  std::cout << "z " << io::format_number(sol.worst_objective) << '\n';
  print_vector("x", sol.x);
  for (std::size_t k = 0; k < sol.recoveries.size(); ++k)
    print_vector(("y[" + p.scenarios[k].id + "]").c_str(), sol.recoveries[k]);
}

int report(const RecoverableSolution& sol, const UncertainProblem& p, const Options& o) {
  print_solution(sol, p);
  write_json(o.out, io::solution_to_json(sol, p));
  return 0;
}

int cmd_validate(const Options& o) {
  const io::Instance inst = io::read_instance(o.instance);
  if (inst.hyperplane) {
    require(!inst.hyperplanes.empty(), Errc::TooFewScenarios, "no hyperplane scenarios");
    const std::size_t n = inst.hyperplanes.front().a.size();
    for (const auto& h : inst.hyperplanes) {
      require(h.a.size() == n, Errc::DimensionMismatch, "hyperplane normals of differing dimension");
      require(norm_inf(h.a) > 0.0, Errc::ZeroNormal, "hyperplane normal is zero");
    }
    std::cout << "ok hyperplane n=" << n << " N=" << inst.hyperplanes.size() << '\n';
  } else {
    validate(inst.problem);
    std::cout << "ok n=" << inst.problem.n << " N=" << inst.problem.num_scenarios()
              << (inst.problem.rhs_only ? " rhs_only" : "") << '\n';
  }
  if (inst.norm) inst.norm->check_dimension(inst.hyperplane ? inst.hyperplanes.front().a.size() : inst.problem.n);
  return 0;
}

int cmd_solve_eps(const Options& o, bool regret) {
  const io::Instance inst = load(o, false);
  validate(inst.problem);
  const BlockNorm norm = resolve_norm(o, inst);
  const ExtReal eps = parse_eps(o.eps);
  return report(regret ? solve_rec_regret_eps(inst.problem, eps, norm) : solve_rec_eps(inst.problem, eps, norm),
                inst.problem, o);
}

int cmd_solve_delta(const Options& o) {
  const io::Instance inst = load(o, false);
  validate(inst.problem);
  return report(solve_rec_delta(inst.problem, o.delta, resolve_norm(o, inst)), inst.problem, o);
}

int cmd_hyperplanes(const Options& o) {
  const io::Instance inst = load(o, true);
  const BlockNorm norm = resolve_norm(o, inst);
  const HyperplaneSolution sol = solve_rec_eps_hyperplanes(inst.hyperplanes, norm);
  std::cout << "r " << io::format_number(sol.radius) << '\n';
  print_vector("x", sol.x);
  write_json(o.out, json{{"x", sol.x}, {"radius", sol.radius}});
  return 0;
}

int cmd_lex(const Options& o) {
  require(o.order == "radius" || o.order == "objective", Errc::InvalidArgument,
          "--order must be radius or objective");
  const io::Instance inst = load(o, false);
  validate(inst.problem);
  return report(lexicographic(inst.problem, resolve_norm(o, inst),
                              o.order == "radius" ? LexOrder::RadiusFirst : LexOrder::ObjectiveFirst),
                inst.problem, o);
}

int cmd_reduce(const Options& o) {
  require(int(o.relaxation) + int(o.rhs_vertices) + int(o.witness) == 1, Errc::InvalidArgument,
          "reduce needs exactly one of --relaxation, --rhs-vertices, --witness");
  io::Instance inst = io::read_instance(o.instance);
  if (o.witness) {
    const BlockNorm norm = resolve_norm(o, inst);
    const Witness w = inst.hyperplane ? caratheodory_witness(inst.hyperplanes, norm)
                                      : caratheodory_witness(inst.problem, parse_eps(o.eps), norm);
    std::cout << "r " << io::format_number(w.radius) << "\nwitness";
    for (const auto& id : w.ids) std::cout << ' ' << id;
    std::cout << "\nsolves " << w.solves << '\n';
    write_json(o.out, json{{"witness", w.ids}, {"radius", w.radius}, {"solves", w.solves}});
    return 0;
  }
  require(!inst.hyperplane, Errc::InvalidArgument, "scenario reduction needs an (A, b, c) instance");
  validate(inst.problem);
  const Reduction red = o.relaxation ? remove_relaxed_scenarios(inst.problem) : vertex_reduce_rhs(inst.problem);
  std::cout << "kept " << red.reduced.num_scenarios() << " of " << inst.problem.num_scenarios() << "\nremoved";
  for (const auto& id : red.removed) std::cout << ' ' << id;
  std::cout << '\n';
  inst.problem = red.reduced;
  write_json(o.out, io::to_json(inst));
  return 0;
}

void write_csv(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(path);
  require(out.good(), Errc::InvalidArgument, "cannot write '" + path + "'");
  emit(out);
}

int cmd_pareto(const Options& o) {
  require(o.mode == "eps" || o.mode == "delta", Errc::InvalidArgument, "--mode must be eps or delta");
  const io::Instance inst = load(o, false);
  validate(inst.problem);
  const ParetoFront front = sweep(inst.problem, resolve_norm(o, inst), o.points,
                                  o.mode == "eps" ? SweepMode::EpsOnObjective : SweepMode::DeltaOnRadius);
  for (const auto& g : front.gaps)
    std::cerr << "gap at bound " << io::format_number(g.bound) << ": " << g.message << '\n';
  write_csv(o.csv, [&](std::ostream& out) { io::write_front_csv(out, front.points); });
  return 0;
}

int cmd_portfolio(Options o) {
  if (const char* env = std::getenv("RECROB_SEED")) {
    try {
      std::size_t used = 0;
      o.seed = std::stoull(env, &used);
      require(used == std::string(env).size(), Errc::InvalidArgument, "");
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, std::string("RECROB_SEED is not an integer: '") + env + "'");
    }
  }
  portfolio::Method method;
  if (o.method == "rec-d")
    method = portfolio::Method::RecD;
  else if (o.method == "rec-it")
    method = portfolio::Method::RecIt;
  else if (o.method == "rec-m")
    method = portfolio::Method::RecM;
  else if (o.method == "rec-p")
    method = portfolio::Method::RecP;
  else
    throw Error(Errc::InvalidArgument, "--method must be rec-d, rec-it, rec-m or rec-p");
  require(o.rec_it_tol > 0.0, Errc::InvalidArgument, "--rec-it-tol must be positive");
  const auto inst = portfolio::generate(o.n, o.big_n, o.seed);
  const auto front = portfolio::pareto_portfolio(inst, o.points, method, std::max(1u, o.jobs), o.rec_it_tol);
  write_csv(o.csv, [&](std::ostream& out) { io::write_portfolio_csv(out, front); });
  if (!o.out.empty()) {
    json pts = json::array();
    for (const auto& p : front)
      pts.push_back({{"bound", p.point.bound},
                     {"objective", p.point.objective_value},
                     {"radius", p.point.radius},
                     {"iterations", p.iterations},
                     {"method", portfolio::method_name(p.method)},
                     {"x", p.point.solution.x}});
    write_json(o.out, json{{"n", o.n}, {"N", o.big_n}, {"seed", o.seed}, {"front", pts}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recoverable-robust linear programming toolkit"};
  app.require_subcommand(1);
  Options o;

  auto with_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", o.instance, "Instance JSON file")->required()->check(CLI::ExistingFile);
  };
  auto with_norm = [&](CLI::App* sub) {
    sub->add_option("--norm", o.norm, "l1, l2 or linf (default: instance norm, else l1)");
  };
  auto with_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write a JSON result here"); };

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  with_instance(validate_cmd);

  auto* eps_cmd = app.add_subcommand("solve-eps", "Minimize the recovery radius under an objective bound");
  auto* regret_cmd = app.add_subcommand("solve-regret", "Rec(eps) with bounds relative to scenario optima");
  for (auto* sub : {eps_cmd, regret_cmd}) {
    with_instance(sub);
    with_norm(sub);
    with_out(sub);
    sub->add_option("--eps", o.eps, "Objective bound, or inf");
  }

  auto* delta_cmd = app.add_subcommand("solve-delta", "Minimize the worst objective within a radius");
  with_instance(delta_cmd);
  with_norm(delta_cmd);
  with_out(delta_cmd);
  delta_cmd->add_option("--delta", o.delta, "Recovery radius")->required();

  auto* hyp_cmd = app.add_subcommand("solve-hyperplanes", "Center problem for hyperplane scenarios");
  with_instance(hyp_cmd);
  with_norm(hyp_cmd);
  with_out(hyp_cmd);

  auto* lex_cmd = app.add_subcommand("lex", "Lexicographic endpoint of the front");
  with_instance(lex_cmd);
  with_norm(lex_cmd);
  with_out(lex_cmd);
  lex_cmd->add_option("--order", o.order, "radius (radius first) or objective");

  auto* reduce_cmd = app.add_subcommand("reduce", "Scenario reduction");
  with_instance(reduce_cmd);
  with_norm(reduce_cmd);
  with_out(reduce_cmd);
  reduce_cmd->add_flag("--relaxation", o.relaxation, "Remove scenarios that relax another one");
  reduce_cmd->add_flag("--rhs-vertices", o.rhs_vertices, "Keep only hull vertices of the right-hand sides");
  reduce_cmd->add_flag("--witness", o.witness, "Find a smallest subset with the same radius");
  reduce_cmd->add_option("--eps", o.eps, "Objective bound for --witness, or inf");

  auto* pareto_cmd = app.add_subcommand("pareto", "Sweep the objective/radius front");
  with_instance(pareto_cmd);
  with_norm(pareto_cmd);
  pareto_cmd->add_option("--points", o.points, "Number of bounds")->check(CLI::Range(2, 100000));
  pareto_cmd->add_option("--mode", o.mode, "eps (bound the objective) or delta (bound the radius)");
  pareto_cmd->add_option("--csv", o.csv, "CSV output file (default stdout)");

  auto* port_cmd = app.add_subcommand("portfolio", "Portfolio benchmark front");
  port_cmd->add_option("--n", o.n, "Assets")->check(CLI::PositiveNumber);
  port_cmd->add_option("--N", o.big_n, "Scenarios")->check(CLI::PositiveNumber);
  port_cmd->add_option("--seed", o.seed, "Generator seed (RECROB_SEED overrides)");
  port_cmd->add_option("--method", o.method, "rec-d, rec-it, rec-m (profit bounds) or rec-p (radius bounds)");
  port_cmd->add_option("--points", o.points, "Number of profit bounds")->check(CLI::Range(2, 100000));
  port_cmd->add_option("--csv", o.csv, "CSV output file (default stdout)");
  port_cmd->add_option("--rec-it-tol", o.rec_it_tol, "Rec-It stopping tolerance");
  port_cmd->add_option("--jobs", o.jobs, "Parallel bounds (default 1)");
  with_out(port_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*eps_cmd) return cmd_solve_eps(o, false);
    if (*regret_cmd) return cmd_solve_eps(o, true);
    if (*delta_cmd) return cmd_solve_delta(o);
    if (*hyp_cmd) return cmd_hyperplanes(o);
    if (*lex_cmd) return cmd_lex(o);
    if (*reduce_cmd) return cmd_reduce(o);
    if (*pareto_cmd) return cmd_pareto(o);
    if (*port_cmd) return cmd_portfolio(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitModel;
  }
  return kExitUsage;
}
