#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ferrysched/errors.hpp"
#include "ferrysched/oracle.hpp"
#include "ferrysched/solver.hpp"
#include "support/instance_gen.hpp"

using namespace ferrysched;

TEST_CASE("gap formula") {
  CHECK(mip_gap(Rational(10), Rational(8)) == Rational(1, 5));
  CHECK(mip_gap(Rational(5), Rational(5)) == 0);
  CHECK(mip_gap(Rational(0), Rational(0)) == 0);
  CHECK(mip_gap(Rational(124), Rational(0)) == 1);
}

TEST_CASE("branch and bound matches exhaustive enumeration") {
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    CAPTURE(name);
    IpModel model = build_model(inst);
    MipResult got = solve_mip(model);
    MipResult want = brute_force_oracle(inst);
    REQUIRE(got.status == want.status);
    if (want.status == MipStatus::OPTIMAL) {
      REQUIRE(got.objective.has_value());
      CHECK(*got.objective == *want.objective);
      CHECK(got.bound == *want.objective);
      CHECK(got.gap == 0);
      REQUIRE(got.incumbent.has_value());
      CHECK(model_violations(model, *got.incumbent).empty());
      CHECK(assignment_objective(model, *got.incumbent) == *got.objective);

      // float relaxations with exact refinement land on the same optimum
      SolverConfig fcfg;
      fcfg.float_mode = true;
      MipResult fres = solve_mip(model, fcfg);
      REQUIRE(fres.status == MipStatus::OPTIMAL);
      CHECK(*fres.objective == *want.objective);

      // the relaxation never exceeds the integer optimum
      LpSolution lp = solve_lp(model);
      REQUIRE(lp.status == LpStatus::OPTIMAL);
      CHECK(lp.objective <= *want.objective);
    }
  }
}

TEST_CASE("bound trail is monotone and capped by the optimum") {
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    if (inst.costs.mode == Mode::BASIC && inst.ferries.size() > 1) continue;  // keep it quick
    CAPTURE(name);
    IpModel model = build_model(inst);
    MipResult res = solve_mip(model);
    if (res.status != MipStatus::OPTIMAL) continue;
    CHECK(!res.events.empty());
    Rational prev_bound(-1);
    for (const BoundEvent& ev : res.events) {
      CHECK(ev.bound <= *res.objective);
      CHECK(ev.bound >= prev_bound);
      prev_bound = ev.bound;
      if (ev.incumbent) CHECK(*ev.incumbent >= *res.objective);
    }
  }
}

TEST_CASE("search and branching variants agree on the optimum") {
  int done = 0;
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    if (done >= 6) break;
    CAPTURE(name);
    IpModel model = build_model(inst);
    MipResult base = solve_mip(model);
    if (base.status != MipStatus::OPTIMAL) continue;
    ++done;
    for (auto search : {SearchOrder::BEST_BOUND, SearchOrder::DFS})
      for (auto rule : {BranchRule::MOST_FRACTIONAL_Y_FIRST, BranchRule::PSEUDO}) {
        SolverConfig cfg;
        cfg.search = search;
        cfg.branch_rule = rule;
        MipResult res = solve_mip(model, cfg);
        REQUIRE(res.status == MipStatus::OPTIMAL);
        CHECK(*res.objective == *base.objective);
      }
  }
  CHECK(done == 6);
}

TEST_CASE("identical configurations replay identically") {
  int done = 0;
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    if (done >= 5) break;
    ++done;
    CAPTURE(name);
    IpModel model = build_model(inst);
    MipResult a = solve_mip(model);
    MipResult b = solve_mip(model);
    CHECK(a.status == b.status);
    CHECK(a.nodes == b.nodes);
    CHECK(a.bound == b.bound);
    CHECK(a.objective == b.objective);
    CHECK(a.incumbent == b.incumbent);
    CHECK(a.events.size() == b.events.size());
  }
}

TEST_CASE("idle warm start is accepted and never hurts") {
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    if (inst.costs.mode == Mode::BASIC) continue;  // idling may clash with berth caps there
    CAPTURE(name);
    IpModel model = build_model(inst);
    Assignment idle = make_idle_assignment(inst, model);
    CHECK(model_violations(model, idle).empty());

    SolverConfig cfg;
    cfg.warm_start = idle;
    MipResult warm = solve_mip(model, cfg);
    MipResult cold = solve_mip(model);
    REQUIRE(warm.status == cold.status);
    if (cold.status == MipStatus::OPTIMAL) CHECK(*warm.objective == *cold.objective);
    bool noted = false;
    for (const std::string& n : warm.notes)
      if (n.find("warm start accepted") != std::string::npos) noted = true;
    CHECK(noted);
  }
}

TEST_CASE("infeasible warm starts are rejected with a note") {
  ProblemInstance inst = testgen::tiny_suite()[6].inst;  // free_entry
  IpModel model = build_model(inst);
  Assignment junk;
  junk[model.vars[0].key()] = 1;  // lone arc, violates balance
  SolverConfig cfg;
  cfg.warm_start = junk;
  MipResult res = solve_mip(model, cfg);
  REQUIRE(res.status == MipStatus::OPTIMAL);
  bool noted = false;
  for (const std::string& n : res.notes)
    if (n.find("warm start rejected") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("node limit stops the search with an honest status") {
  ProblemInstance inst = testgen::tiny_suite()[10].inst;  // shift_crew_change
  IpModel model = build_model(inst);

  SolverConfig starved;
  starved.node_limit = 1;
  MipResult res = solve_mip(model, starved);
  CHECK(res.nodes <= 1);
  bool ok = res.status == MipStatus::TIMEOUT_NO_INCUMBENT || res.status == MipStatus::OPTIMAL;
  CHECK(ok);

  SolverConfig primed;
  primed.node_limit = 1;
  primed.warm_start = make_idle_assignment(inst, model);
  MipResult res2 = solve_mip(model, primed);
  REQUIRE(res2.incumbent.has_value());
  bool ok2 = res2.status == MipStatus::FEASIBLE_GAP || res2.status == MipStatus::OPTIMAL;
  CHECK(ok2);
  if (res2.status == MipStatus::FEASIBLE_GAP) {
    CHECK(res2.gap > 0);
    CHECK(res2.bound <= *res2.objective);
  }
}

TEST_CASE("exhaustive reference refuses oversized inputs") {
  CHECK_THROWS_AS(brute_force_oracle(testgen::scaling_instance({3, 1, 20})), LimitError);
  OracleLimits one_ferry;
  one_ferry.max_ferries = 1;
  CHECK_THROWS_AS(brute_force_oracle(testgen::tiny_suite()[3].inst, one_ferry), LimitError);
}

TEST_CASE("relaxation objective is exact and reproducible") {
  ProblemInstance inst = testgen::tiny_suite()[0].inst;
  IpModel model = build_model(inst);
  LpSolution a = solve_lp(model);
  LpSolution b = solve_lp(model);
  REQUIRE(a.status == LpStatus::OPTIMAL);
  CHECK(a.objective == b.objective);
  CHECK(a.values == b.values);
  LpSolution f = solve_lp_float(model);
  REQUIRE(f.status == LpStatus::OPTIMAL);
  // the float basis, re-evaluated exactly, matches the exact optimum here
  CHECK(f.objective == a.objective);
}
