#include <benchmark/benchmark.h>

#include "ferrysched/mps.hpp"
#include "ferrysched/network.hpp"
#include "ferrysched/schedule.hpp"
#include "ferrysched/solver.hpp"
#include "support/instance_gen.hpp"

using namespace ferrysched;

namespace {

const ProblemInstance& case_inst() {
  static ProblemInstance inst = testgen::case_study();
  return inst;
}

const IpModel& case_model() {
  static IpModel model = build_model(case_inst());
  return model;
}

void bm_expand_one_ferry(benchmark::State& state) {
  const ProblemInstance& inst = case_inst();
  for (auto _ : state) {
    FerryFlowNetwork net = build_ferry_network(inst, 1);
    benchmark::DoNotOptimize(net.arcs.data());
  }
}
BENCHMARK(bm_expand_one_ferry);

void bm_build_case_model(benchmark::State& state) {
  const ProblemInstance& inst = case_inst();
  for (auto _ : state) {
    IpModel model = build_model(inst);
    benchmark::DoNotOptimize(model.vars.data());
  }
}
BENCHMARK(bm_build_case_model)->Unit(benchmark::kMillisecond);

void bm_build_scaling_model(benchmark::State& state) {
  testgen::FamilyPoint pt;
  pt.n = static_cast<int>(state.range(0));
  pt.m = 2;
  pt.q = 40;
  ProblemInstance inst = testgen::scaling_instance(pt);
  for (auto _ : state) {
    IpModel model = build_model(inst);
    benchmark::DoNotOptimize(model.vars.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_build_scaling_model)->Arg(3)->Arg(4)->Arg(5)->Arg(6)->Complexity();

void bm_export_mps(benchmark::State& state) {
  const IpModel& model = case_model();
  for (auto _ : state) {
    std::string text = export_mps(model);
    benchmark::DoNotOptimize(text.data());
  }
}
BENCHMARK(bm_export_mps)->Unit(benchmark::kMillisecond);

void bm_parse_mps(benchmark::State& state) {
  std::string text = export_mps(case_model());
  for (auto _ : state) {
    IpModel model = parse_mps(text);
    benchmark::DoNotOptimize(model.vars.data());
  }
}
BENCHMARK(bm_parse_mps)->Unit(benchmark::kMillisecond);

void bm_idle_validate(benchmark::State& state) {
  const ProblemInstance& inst = case_inst();
  const IpModel& model = case_model();
  Assignment idle = make_idle_assignment(inst, model);
  for (auto _ : state) {
    ValidationReport rep = validate(inst, idle);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(bm_idle_validate)->Unit(benchmark::kMillisecond);

void bm_solve_exact(benchmark::State& state) {
  auto suite = testgen::tiny_suite();
  const ProblemInstance& inst = suite[static_cast<std::size_t>(state.range(0))].inst;
  IpModel model = build_model(inst);
  for (auto _ : state) {
    MipResult res = solve_mip(model);
    benchmark::DoNotOptimize(res.nodes);
  }
}
BENCHMARK(bm_solve_exact)->Arg(0)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

void bm_solve_float(benchmark::State& state) {
  auto suite = testgen::tiny_suite();
  const ProblemInstance& inst = suite[static_cast<std::size_t>(state.range(0))].inst;
  IpModel model = build_model(inst);
  SolverConfig cfg;
  cfg.float_mode = true;
  for (auto _ : state) {
    MipResult res = solve_mip(model, cfg);
    benchmark::DoNotOptimize(res.nodes);
  }
}
BENCHMARK(bm_solve_float)->Arg(0)->Arg(9)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
