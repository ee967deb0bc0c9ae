#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ferrysched/errors.hpp"
#include "ferrysched/gantt.hpp"
#include "ferrysched/names.hpp"
#include "ferrysched/oracle.hpp"
#include "ferrysched/schedule.hpp"
#include "ferrysched/solution_io.hpp"
#include "ferrysched/solver.hpp"
#include "support/instance_gen.hpp"

using namespace ferrysched;

namespace {

struct Solved {
  std::string name;
  ProblemInstance inst;
  IpModel model;
  MipResult res;
};

const std::vector<Solved>& solved_suite() {
  static std::vector<Solved> cache = [] {
    std::vector<Solved> out;
    for (const auto& [name, inst] : testgen::tiny_suite()) {
      IpModel model = build_model(inst);
      MipResult res = solve_mip(model);
      out.push_back({name, inst, std::move(model), std::move(res)});
    }
    return out;
  }();
  return cache;
}

}  // namespace

TEST_CASE("optimal points extract, validate, and encode back exactly") {
  for (const Solved& s : solved_suite()) {
    CAPTURE(s.name);
    if (s.res.status != MipStatus::OPTIMAL) continue;
    const Assignment& a = *s.res.incumbent;

    Schedule sched = extract_schedule(s.inst, a);
    CHECK(sched.mode == s.inst.costs.mode);
    CHECK(sched.ferries.size() == s.inst.ferries.size());

    ValidationReport rep = validate(s.inst, a);
    CHECK(rep.pass);
    CHECK(rep.violations.empty());
    CHECK(rep.objective == *s.res.objective);
    for (const auto& [family, ok] : rep.family_pass) {
      CAPTURE(family);
      CHECK(ok);
    }

    Assignment back = encode_assignment(s.inst, sched);
    CHECK(back == a);

    // calls and legs are time-ordered and linked
    for (const FerryItinerary& it : sched.ferries) {
      for (std::size_t i = 1; i < it.calls.size(); ++i)
        CHECK(it.calls[i - 1].depart_min <= it.calls[i].arrive_min);
      for (const SailingLeg& leg : it.legs) {
        CHECK(leg.depart_min < leg.arrive_min);
        CHECK(leg.onboard() >= 0);
      }
    }
  }
}

TEST_CASE("kpis reassemble the objective") {
  for (const Solved& s : solved_suite()) {
    CAPTURE(s.name);
    if (s.res.status != MipStatus::OPTIMAL) continue;
    Schedule sched = extract_schedule(s.inst, *s.res.incumbent);
    Kpis k = kpis(s.inst, sched, *s.res.incumbent);
    Rational rebuilt = s.inst.costs.lambda * k.operating_cost +
                       s.inst.costs.nu * (Rational(k.total_travel_time_aeq_min) +
                                          s.inst.costs.big_m * k.stranded_aeq);
    CHECK(rebuilt == *s.res.objective);
    CHECK(k.stranded_aeq >= 0);
    CHECK(k.transfers_count >= 0);
  }
}

TEST_CASE("verdicts match the algebraic rows on feasible and broken points") {
  std::mt19937 rng(20260818);
  int checked = 0;
  for (const Solved& s : solved_suite()) {
    CAPTURE(s.name);
    std::vector<Assignment> points;
    if (s.res.incumbent) points.push_back(*s.res.incumbent);
    if (s.inst.costs.mode != Mode::BASIC)
      points.push_back(make_idle_assignment(s.inst, s.model));
    std::size_t n_clean = points.size();
    for (std::size_t base = 0; base < n_clean; ++base)
      for (int round = 0; round < 2; ++round) {
        Assignment mutant = points[base];
        const Variable& v = s.model.vars[rng() % s.model.vars.size()];
        long long& cell = mutant[v.key()];
        if (v.kind == VarKind::BINARY) cell = cell == 0 ? 1 : 0;
        else cell += 1 + static_cast<long long>(rng() % 2);
        points.push_back(std::move(mutant));
      }
    for (const Assignment& a : points) {
      ValidationReport rep = validate(s.inst, a);
      bool rows_ok = model_violations(s.model, a).empty();
      CHECK(rep.pass == rows_ok);
      CHECK(rep.pass == rep.violations.empty());
      ++checked;
    }
  }
  CHECK(checked >= 70);
}

TEST_CASE("solution files round trip through the importer") {
  for (const Solved& s : solved_suite()) {
    if (s.res.status != MipStatus::OPTIMAL) continue;
    CAPTURE(s.name);
    std::string text = write_solution(s.model, s.res);
    MipResult back = read_solution(s.model, text);
    REQUIRE(back.incumbent.has_value());
    CHECK(*back.incumbent == *s.res.incumbent);
    CHECK(*back.objective == *s.res.objective);
    CHECK(back.status == MipStatus::FEASIBLE_GAP);
    CHECK(back.bound == 0);
  }
}

TEST_CASE("importer flags drifted headers and unknown names") {
  const Solved& s = solved_suite().front();
  std::string text = write_solution(s.model, s.res);
  std::string drifted = "objective 999999\n" + text.substr(text.find('\n') + 1);
  MipResult back = read_solution(s.model, drifted);
  bool noted = false;
  for (const std::string& n : back.notes)
    if (n.find("header") != std::string::npos || n.find("drift") != std::string::npos) noted = true;
  CHECK(noted);
  CHECK(*back.objective == *s.res.objective);  // recomputed, not trusted

  CHECK_THROWS_AS(read_solution(s.model, "objective 1\nY_bogus_name 1\n"), Error);
  CHECK_THROWS_AS(read_solution(s.model, "no header\n"), IoError);
}

TEST_CASE("near integers are snapped, far ones rejected") {
  const Solved& s = solved_suite().front();
  std::string name = s.model.vars[0].name;
  for (const Variable& v : s.model.vars)
    if (v.cost != 0) { name = v.name; break; }
  MipResult ok = read_solution(s.model, "objective 0\n" + name + " 0.99999\n");
  REQUIRE(ok.incumbent.has_value());
  CHECK(ok.incumbent->at(parse_var_name(name)) == 1);
  CHECK_THROWS_AS(read_solution(s.model, "objective 0\n" + name + " 0.4\n"), IoError);
}

TEST_CASE("strands are attributed to the port where demand is stuck") {
  for (const Solved& s : solved_suite()) {
    if (s.name != "late_demand_strands") continue;
    REQUIRE(s.res.status == MipStatus::OPTIMAL);
    Schedule sched = extract_schedule(s.inst, *s.res.incumbent);
    long long stuck = 0;
    for (const auto& [key, aeq] : sched.stranded) {
      CHECK(key.first == 2);   // destination
      CHECK(key.second == 1);  // origin port it never left
      stuck += aeq;
    }
    CHECK(stuck == 1);
    ValidationReport rep = validate(s.inst, *s.res.incumbent);
    CHECK(rep.stranded_aeq == 1);
  }
}

TEST_CASE("crew break splits the itinerary in the rendered text") {
  for (const Solved& s : solved_suite()) {
    if (s.name != "shift_crew_change") continue;
    REQUIRE(s.res.status == MipStatus::OPTIMAL);
    Schedule sched = extract_schedule(s.inst, *s.res.incumbent);
    const FerryItinerary& it = sched.ferries[0];
    CHECK(it.shift1);
    CHECK(it.shift2);
    std::string text = render_schedule(s.inst, sched);
    CHECK(text.find("BREAK") != std::string::npos);
    CHECK(text.find("shift") != std::string::npos);
  }
}

TEST_CASE("hand-built zero-layover handoff trips only the transfer family") {
  ProblemInstance guarded = testgen::transfer_showcase(1);
  ProblemInstance open = testgen::transfer_showcase(0);

  Schedule s;
  s.mode = Mode::BASIC;
  FerryItinerary f1, f2;
  f1.ferry = 1;
  f1.calls = {{1, 0, 0}, {2, 20, 30}, {1, 50, 80}};
  f1.legs = {{1, 2, 0, 20, {{3, 1}}}, {2, 1, 30, 50, {}}};
  f2.ferry = 2;
  f2.calls = {{3, 0, 0}, {2, 10, 20}, {3, 30, 80}};
  f2.legs = {{3, 2, 0, 10, {}}, {2, 3, 20, 30, {{3, 1}}}};
  s.ferries = {f1, f2};

  Assignment tight = encode_assignment(guarded, s);
  Schedule back = extract_schedule(guarded, tight);
  CHECK(back == s);

  ValidationReport bad = validate(guarded, tight);
  CHECK(!bad.pass);
  CHECK(!bad.family_pass.at("transfer"));
  for (const auto& [family, ok] : bad.family_pass)
    if (family != "transfer") CHECK(ok);

  ValidationReport fine = validate(open, encode_assignment(open, s));
  CHECK(fine.pass);
}

TEST_CASE("gantt artifacts are deterministic and well formed") {
  for (const Solved& s : solved_suite()) {
    if (s.res.status != MipStatus::OPTIMAL) continue;
    CAPTURE(s.name);
    Schedule sched = extract_schedule(s.inst, *s.res.incumbent);
    std::string csv = gantt_csv(sched);
    CHECK(csv.rfind("ferry,port,time_min", 0) == 0);
    long long calls = 0;
    for (const FerryItinerary& it : sched.ferries) calls += static_cast<long long>(it.calls.size());
    CHECK(std::count(csv.begin(), csv.end(), '\n') == calls * 2 + 1);
    CHECK(csv == gantt_csv(sched));

    std::string svg = gantt_svg(s.inst, sched);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg == gantt_svg(s.inst, sched));
  }
}

TEST_CASE("extraction rejects flows that are not unit walks") {
  const Solved& s = solved_suite().front();
  REQUIRE(s.res.status == MipStatus::OPTIMAL);
  Assignment broken = *s.res.incumbent;
  // duplicate some ferry arc so the walk branches or overshoots
  for (const auto& [key, val] : *s.res.incumbent)
    if (key.role == VarRole::FERRY_ARC && val == 1) {
      broken[key] = 2;
      break;
    }
  CHECK_THROWS_AS(extract_schedule(s.inst, broken), PathError);
}
