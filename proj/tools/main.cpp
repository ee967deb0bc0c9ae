#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ferrysched/errors.hpp"
#include "ferrysched/gantt.hpp"
#include "ferrysched/mps.hpp"
#include "ferrysched/oracle.hpp"
#include "ferrysched/schedule.hpp"
#include "ferrysched/solution_io.hpp"
#include "ferrysched/solver.hpp"

namespace {

using namespace ferrysched;

constexpr int kExitOk = 0;
constexpr int kExitGeneral = 1;
constexpr int kExitValidation = 2;
constexpr int kExitLimits = 3;
constexpr int kExitUsage = 64;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path)
    spill(*path, text);
  else
    std::cout << text;
}

void print_result(const IpModel& model, const MipResult& res) {
  std::cout << "status " << to_string(res.status) << "\n";
  if (res.objective) std::cout << "objective " << render_exact(*res.objective) << "\n";
  std::cout << "bound " << render_exact(res.bound) << "\n";
  std::cout << "gap " << render_decimal(res.gap, 10) << "\n";
  std::cout << "nodes " << res.nodes << "\n";
  std::cout << "time_s " << res.wall_time_s << "\n";
  for (const std::string& n : res.notes) std::cout << "note " << n << "\n";
  (void)model;
}

int exit_for(MipStatus s) {
  switch (s) {
    case MipStatus::OPTIMAL: return kExitOk;
    case MipStatus::FEASIBLE_GAP:
    case MipStatus::TIMEOUT_NO_INCUMBENT: return kExitLimits;
    case MipStatus::INFEASIBLE: return kExitValidation;
  }
  return kExitGeneral;
}

int run(int argc, char** argv) {
  CLI::App app{"ferry scheduling over a time-expanded network"};
  app.require_subcommand(1);

  std::string instance_path, solution_path, warm = "";
  std::optional<std::string> out_path, svg_path;
  double time_limit = 0;
  std::string gap_text;
  long long node_limit = 0;
  std::string search = "best", branch = "fractional";
  bool float_mode = false, lp_text = false, show_schedule = false;

  auto* c_build = app.add_subcommand("build", "write the model in its text form");
  c_build->add_option("instance", instance_path, "instance document")->required();
  c_build->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* c_stats = app.add_subcommand("stats", "print model size counters");
  c_stats->add_option("instance", instance_path, "instance document")->required();

  auto* c_solve = app.add_subcommand("solve", "run the built-in branch and bound");
  c_solve->add_option("instance", instance_path, "instance document")->required();
  c_solve->add_option("--time-limit", time_limit, "wall-clock limit, seconds");
  c_solve->add_option("--gap", gap_text, "relative gap tolerance (rational or decimal)");
  c_solve->add_option("--node-limit", node_limit, "node budget");
  c_solve->add_option("--warm-start", warm, "`idle` or a solution file");
  c_solve->add_option("--search", search, "best | dfs")
      ->check(CLI::IsMember({"best", "dfs"}));
  c_solve->add_option("--branch", branch, "fractional | pseudo")
      ->check(CLI::IsMember({"fractional", "pseudo"}));
  c_solve->add_flag("--float", float_mode, "double-precision node relaxations");
  c_solve->add_flag("--schedule", show_schedule, "print the extracted schedule");
  c_solve->add_option("-o,--output", out_path, "solution file to write");

  auto* c_validate = app.add_subcommand("validate", "check a solution file");
  c_validate->add_option("instance", instance_path, "instance document")->required();
  c_validate->add_option("solution", solution_path, "solution file")->required();

  auto* c_mps = app.add_subcommand("export-mps", "write the model as MPS");
  c_mps->add_option("instance", instance_path, "instance document")->required();
  c_mps->add_flag("--lp", lp_text, "LP text instead of MPS");
  c_mps->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* c_gantt = app.add_subcommand("gantt", "plot data for a solved schedule");
  c_gantt->add_option("instance", instance_path, "instance document")->required();
  c_gantt->add_option("solution", solution_path, "solution file")->required();
  c_gantt->add_option("-o,--output", out_path, "vertex CSV path (default stdout)");
  c_gantt->add_option("--svg", svg_path, "also render a drawing to this path");

  auto* c_oracle = app.add_subcommand("oracle", "exhaustive optimum for tiny instances");
  c_oracle->add_option("instance", instance_path, "instance document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  ProblemInstance inst = load_instance_file(instance_path);

  if (c_build->parsed()) {
    emit(out_path, serialize_model(build_model(inst)));
    return kExitOk;
  }
  if (c_stats->parsed()) {
    IpModel model = build_model(inst);
    ModelStats st = model_stats(model);
    std::cout << "vars " << st.n_vars << "\nbinary " << st.n_binary << "\ninteger "
              << st.n_integer << "\nrows " << st.n_rows << "\nnonzeros " << st.nonzeros << "\n";
    for (const auto& [tag, n] : st.rows_by_tag)
      std::cout << "rows_" << to_string(tag) << " " << n << "\n";
    return kExitOk;
  }
  if (c_solve->parsed()) {
    IpModel model = build_model(inst);
    SolverConfig cfg;
    if (c_solve->count("--time-limit")) cfg.time_limit_s = time_limit;
    if (c_solve->count("--gap")) cfg.gap_tol = parse_rational(gap_text);
    if (c_solve->count("--node-limit")) cfg.node_limit = node_limit;
    cfg.search = search == "dfs" ? SearchOrder::DFS : SearchOrder::BEST_BOUND;
    cfg.branch_rule =
        branch == "pseudo" ? BranchRule::PSEUDO : BranchRule::MOST_FRACTIONAL_Y_FIRST;
    cfg.float_mode = float_mode;
    if (warm == "idle")
      cfg.warm_start = make_idle_assignment(inst, model);
    else if (!warm.empty())
      cfg.warm_start = read_solution(model, slurp(warm)).incumbent;

    MipResult res = solve_mip(model, cfg);
    print_result(model, res);
    if (res.incumbent) {
      if (out_path) spill(*out_path, write_solution(model, res));
      if (show_schedule) {
        Schedule sched = extract_schedule(inst, *res.incumbent);
        std::cout << render_schedule(inst, sched);
        Kpis k = kpis(inst, sched, *res.incumbent);
        std::cout << "operating_cost " << render_exact(k.operating_cost)
                  << "\ntravel_time_aeq_min " << k.total_travel_time_aeq_min << "\nstranded_aeq "
                  << k.stranded_aeq << "\ntransfers " << k.transfers_count << "\n";
      }
    }
    return exit_for(res.status);
  }
  if (c_validate->parsed()) {
    IpModel model = build_model(inst);
    MipResult imported = read_solution(model, slurp(solution_path));
    ValidationReport rep = validate(inst, *imported.incumbent);
    for (const auto& [family, ok] : rep.family_pass)
      std::cout << family << " " << (ok ? "pass" : "FAIL") << "\n";
    for (const Violation& v : rep.violations)
      std::cout << "violation " << v.family << " at " << v.site << " by "
                << render_exact(v.magnitude) << "\n";
    std::cout << "objective " << render_exact(rep.objective) << "\n";
    std::cout << "stranded_aeq " << rep.stranded_aeq << "\n";
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
    return rep.pass ? kExitOk : kExitValidation;
  }
  if (c_mps->parsed()) {
    IpModel model = build_model(inst);
    emit(out_path, lp_text ? export_lp_text(model) : export_mps(model));
    return kExitOk;
  }
  if (c_gantt->parsed()) {
    IpModel model = build_model(inst);
    MipResult imported = read_solution(model, slurp(solution_path));
    Schedule sched = extract_schedule(inst, *imported.incumbent);
    emit(out_path, gantt_csv(sched));
    if (svg_path) spill(*svg_path, gantt_svg(inst, sched));
    return kExitOk;
  }
  if (c_oracle->parsed()) {
    MipResult res = brute_force_oracle(inst);
    std::cout << "status " << to_string(res.status) << "\n";
    if (res.objective) std::cout << "objective " << render_exact(*res.objective) << "\n";
    std::cout << "combos " << res.nodes << "\n";
    return res.status == MipStatus::OPTIMAL ? kExitOk : kExitValidation;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return kExitLimits;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneral;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneral;
  }
}
