#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "ferrysched/mps.hpp"
#include "ferrysched/network.hpp"
#include "ferrysched/oracle.hpp"
#include "ferrysched/schedule.hpp"
#include "ferrysched/solver.hpp"
#include "support/instance_gen.hpp"

using namespace ferrysched;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// prints one verdict line per criterion, independent of assertion details
struct Verdict {
  const char* label;
  bool ok = true;
  std::string detail;

  explicit Verdict(const char* l) : label(l) {}
  void expect(bool cond, const std::string& why) {
    CHECK(cond);
    if (!cond && detail.empty()) detail = why;
    ok = ok && cond;
  }
  ~Verdict() {
    std::printf("%s %s%s%s\n", ok ? "PASS" : "FAIL", label, detail.empty() ? "" : " :: ",
                detail.c_str());
    std::fflush(stdout);
  }
};

ProblemInstance triangle_instance() {
  return load_instance(R"({
    "horizon": {"start": 0, "end": 120, "delta": 10},
    "ports": [{"id":1,"berths":2},{"id":2,"berths":2},{"id":3,"berths":2}],
    "ferries": [{"id":1,"capacity":10,"home":1,"cost_moving_per_hour":120,"cost_docked_per_hour":12,
                 "travel":{"1-2":20,"2-1":20,"1-3":30,"3-1":30,"2-3":40,"3-2":40}}],
    "costs": {"mode": "BASIC"}
  })");
}

// least-squares scale for actual ~ c * basis, then the relative errors
struct FitReport {
  double c = 0;
  double rms = 0;
  double worst = 0;
};

FitReport fit_scale(const std::vector<double>& basis, const std::vector<double>& actual) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    num += basis[i] * actual[i];
    den += basis[i] * basis[i];
  }
  FitReport rep;
  rep.c = num / den;
  double acc = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double rel = std::abs(rep.c * basis[i] - actual[i]) / actual[i];
    acc += rel * rel;
    rep.worst = std::max(rep.worst, rel);
  }
  rep.rms = std::sqrt(acc / static_cast<double>(basis.size()));
  return rep;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

TEST_CASE("criterion 1: triangle expansion lands on exact slot offsets") {
  Verdict v("criterion 1 (grid reconstruction)");
  auto t0 = std::chrono::steady_clock::now();

  ProblemInstance inst = triangle_instance();
  const int q = inst.horizon.q();
  FerryFlowNetwork net = build_ferry_network(inst, 1);

  std::map<std::pair<int, int>, int> offset;
  offset[{1, 2}] = offset[{2, 1}] = 2;
  offset[{1, 3}] = offset[{3, 1}] = 3;
  offset[{2, 3}] = offset[{3, 2}] = 4;

  int waiting = 0, service = 0;
  for (const Arc& a : net.arcs) {
    if (a.kind == ArcKind::SERVICE) {
      ++service;
      v.expect(a.to.slot - a.from.slot == offset.at({a.from.id, a.to.id}),
               "service arc lands off its offset");
      v.expect(a.to.slot <= q, "service arc lands past the horizon");
    }
    if (a.kind == ArcKind::WAITING) ++waiting;
  }
  int want_service = 0;
  for (auto [pair, off] : offset) want_service += q - off;
  v.expect(service == want_service, "service arc count");
  v.expect(waiting == 3 * (q - 1), "waiting arcs must number ports*(q-1)");
  v.expect(seconds_since(t0) < 1.0, "runtime must stay under one second");
}

TEST_CASE("criterion 2: counts grow like the stated size law") {
  Verdict v("criterion 2 (size scaling)");
  auto t0 = std::chrono::steady_clock::now();

  std::vector<double> row_basis, rows, var_basis, vars;
  for (const testgen::FamilyPoint& pt : testgen::scaling_grid()) {
    IpModel model = build_model(testgen::scaling_instance(pt));
    ModelStats st = model_stats(model);
    double n = pt.n, m = pt.m, q = pt.q;
    row_basis.push_back(q * m * n * n);
    rows.push_back(st.n_rows);
    var_basis.push_back(q * m * n * n * n);
    vars.push_back(st.n_vars);
  }
  FitReport rfit = fit_scale(row_basis, rows);
  FitReport vfit = fit_scale(var_basis, vars);
  v.detail = "rows c=" + fmt(rfit.c) + " rms=" + fmt(rfit.rms) + " worst=" + fmt(rfit.worst) +
             "; vars c'=" + fmt(vfit.c) + " rms=" + fmt(vfit.rms) + " worst=" + fmt(vfit.worst);
  v.expect(rfit.rms <= 0.25, "row fit error above 25%");
  v.expect(vfit.rms <= 0.25, "var fit error above 25%");
  v.expect(seconds_since(t0) < 30.0, "runtime must stay under thirty seconds");
}

TEST_CASE("criterion 3: exact solver equals exhaustive enumeration") {
  Verdict v("criterion 3 (reference optimality)");
  auto t0 = std::chrono::steady_clock::now();

  auto suite = testgen::tiny_suite();
  v.expect(suite.size() >= 20, "need at least twenty miniatures");
  for (const auto& [name, inst] : suite) {
    IpModel model = build_model(inst);
    MipResult got = solve_mip(model);
    MipResult want = brute_force_oracle(inst);
    v.expect(got.status == want.status, name + ": status differs");
    if (got.status == MipStatus::OPTIMAL && want.status == MipStatus::OPTIMAL)
      v.expect(*got.objective == *want.objective, name + ": objective differs");
  }
  v.expect(seconds_since(t0) < 300.0, "runtime must stay under five minutes");
}

TEST_CASE("criterion 4: the idle start is feasible at its closed-form price") {
  Verdict v("criterion 4 (idle feasibility)");

  std::vector<ProblemInstance> pool;
  for (const auto& [name, inst] : testgen::tiny_suite())
    if (inst.costs.mode == Mode::HOMEPORT_FREE) pool.push_back(inst);
  for (const testgen::FamilyPoint& pt : testgen::scaling_grid())
    pool.push_back(testgen::scaling_instance(pt));
  v.expect(pool.size() >= 25, "need a real population of free-mode instances");

  for (const ProblemInstance& inst : pool) {
    IpModel model = build_model(inst);
    Assignment idle = make_idle_assignment(inst, model);
    ValidationReport rep = validate(inst, idle);
    v.expect(rep.pass, "idle point must validate");

    Rational want = 0;
    const Horizon& h = inst.horizon;
    for (const Demand& d : inst.demands) {
      int i = h.snap_up(d.depart_min);
      want += Rational(d.aeq) * (Rational(h.delta_min) * (h.q() - i) + inst.costs.big_m);
    }
    want *= inst.costs.nu;
    v.expect(rep.objective == want, "validated objective is off the closed form");
    v.expect(assignment_objective(model, idle) == want, "model objective is off the closed form");
  }
}

TEST_CASE("criterion 5: zero-layover handoffs are caught and avoided") {
  Verdict v("criterion 5 (transfer guard)");

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

  ValidationReport bad = validate(guarded, encode_assignment(guarded, s));
  v.expect(!bad.pass, "tight handoff must fail under a one-slot minimum");
  v.expect(!bad.family_pass.at("transfer"), "the transfer family must be the one tripped");
  ValidationReport fine = validate(open, encode_assignment(open, s));
  v.expect(fine.pass, "the same handoff must pass with the guard off");

  MipResult tight = solve_mip(build_model(open));
  MipResult lawful = solve_mip(build_model(guarded));
  v.expect(tight.status == MipStatus::OPTIMAL && lawful.status == MipStatus::OPTIMAL,
           "both variants must solve");
  if (v.ok) {
    v.expect(*tight.objective < *lawful.objective, "the guard must actually cost something");
    ValidationReport opt = validate(guarded, *lawful.incumbent);
    v.expect(opt.pass && opt.family_pass.at("transfer"),
             "the guarded optimum must carry no zero-layover transfer");
  }
}

TEST_CASE("criterion 6: full-scale build sizes and round trips") {
  Verdict v("criterion 6 (case-study build)");

  auto t0 = std::chrono::steady_clock::now();
  ProblemInstance inst = testgen::case_study();
  IpModel model = build_model(inst);
  double build_s = seconds_since(t0);

  ModelStats st = model_stats(model);
  v.detail = "vars=" + std::to_string(st.n_vars) + " rows=" + std::to_string(st.n_rows) +
             " build=" + fmt(build_s) + "s";
  v.expect(inst.n_ports() == 7 && inst.n_ferries() == 4 && inst.horizon.q() == 114,
           "instance must match the intended shape");
  v.expect(build_s < 10.0, "build must finish in ten seconds");
  v.expect(st.n_vars * 3 >= 47000 && st.n_vars <= 3 * 47000,
           "variable count must sit within a factor of three of 4.7e4");

  std::string text = export_mps(model);
  IpModel back = parse_mps(text);
  v.expect(back.vars.size() == model.vars.size() && back.rows.size() == model.rows.size(),
           "parsed copy must match structurally");
  v.expect(export_mps(back) == text, "re-export must be byte-identical");
}

TEST_CASE("criterion 7: reported bounds never overshoot") {
  Verdict v("criterion 7 (bound validity)");

  int spot_checked = 0;
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    IpModel model = build_model(inst);
    MipResult res = solve_mip(model);
    MipResult truth = brute_force_oracle(inst);
    if (truth.status != MipStatus::OPTIMAL) continue;
    for (const BoundEvent& ev : res.events)
      v.expect(ev.bound <= *truth.objective, name + ": intermediate bound exceeds the optimum");
    v.expect(res.gap <= Rational(1, 1000000000), name + ": final gap above 1e-9");
    v.expect(res.bound <= *truth.objective, name + ": final bound exceeds the optimum");

    // stopped-early runs must report exactly (objective - bound) / objective
    if (spot_checked < 3 && inst.costs.mode != Mode::BASIC) {
      SolverConfig cfg;
      cfg.node_limit = 1;
      cfg.warm_start = make_idle_assignment(inst, model);
      MipResult cut = solve_mip(model, cfg);
      if (cut.objective && *cut.objective != 0) {
        Rational want = (*cut.objective - cut.bound) / *cut.objective;
        if (want < 0) want = 0;
        v.expect(cut.gap == want, name + ": reported gap is not (obj-bound)/obj");
        ++spot_checked;
      }
    }
  }
  v.expect(spot_checked == 3, "need three hand-checked gap computations");
}

TEST_CASE("criterion 8: validator and algebra agree on every point") {
  Verdict v("criterion 8 (validator equivalence)");

  struct Point {
    const ProblemInstance* inst;
    const IpModel* model;
    Assignment a;
  };
  std::vector<std::pair<ProblemInstance, IpModel>> ctx;
  auto suite = testgen::tiny_suite();
  ctx.reserve(suite.size());
  std::vector<Point> feasible;

  for (const auto& [name, inst] : suite) {
    ctx.emplace_back(inst, build_model(inst));
    auto& [ci, cm] = ctx.back();
    MipResult res = solve_mip(cm);
    if (res.incumbent) feasible.push_back({&ci, &cm, std::move(*res.incumbent)});
    if (ci.costs.mode != Mode::BASIC)
      feasible.push_back({&ci, &cm, make_idle_assignment(ci, cm)});
  }

  // top up with lawful single-ferry park-and-exit variants
  for (auto& [ci, cm] : ctx) {
    if (feasible.size() >= 50) break;
    if (ci.costs.mode != Mode::HOMEPORT_FREE || ci.ferries.size() != 1) continue;
    bool dwelled = false;
    for (const Ferry& f : ci.ferries) dwelled = dwelled || !f.dwell_slots.empty();
    if (dwelled) continue;
    for (int entry = 2; entry < ci.horizon.q() && feasible.size() < 50; ++entry) {
      Schedule s;
      s.mode = ci.costs.mode;
      FerryItinerary it;
      it.ferry = 1;
      int t_in = ci.horizon.slot_time(entry);
      it.calls = {{ci.ferries[0].home_port, t_in, t_in + ci.horizon.delta_min}};
      s.ferries = {it};
      for (const Demand& d : ci.demands) s.stranded[{d.to, d.from}] += d.aeq;
      feasible.push_back({&ci, &cm, encode_assignment(ci, s)});
    }
  }
  v.expect(feasible.size() >= 50, "need fifty feasible points, got " +
                                       std::to_string(feasible.size()));

  std::mt19937 rng(414243);
  std::vector<Point> points = feasible;
  points.resize(std::min<std::size_t>(points.size(), 50));
  std::size_t n_clean = points.size();
  for (std::size_t i = 0; points.size() < n_clean + 50; ++i) {
    const Point& base = points[i % n_clean];
    Point mutant{base.inst, base.model, base.a};
    const Variable& var = base.model->vars[rng() % base.model->vars.size()];
    long long& cell = mutant.a[var.key()];
    if (var.kind == VarKind::BINARY) cell = cell == 0 ? 1 : 0;
    else cell += 1;
    points.push_back(std::move(mutant));
  }

  int disagreements = 0, broken_caught = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    ValidationReport rep = validate(*p.inst, p.a);
    bool rows_ok = model_violations(*p.model, p.a).empty();
    if (rep.pass != rows_ok) ++disagreements;
    if (i >= n_clean && !rep.pass) ++broken_caught;
  }
  v.detail = std::to_string(points.size()) + " points, " + std::to_string(disagreements) +
             " disagreements";
  v.expect(points.size() == 100, "population must be one hundred points");
  v.expect(disagreements == 0, "validator must agree with the row algebra everywhere");
  v.expect(broken_caught == 50, "every perturbed point must be caught");
}
