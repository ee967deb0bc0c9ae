#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ferrysched/errors.hpp"
#include "ferrysched/instance.hpp"
#include "ferrysched/names.hpp"
#include "ferrysched/rational.hpp"
#include "ferrysched/timeutil.hpp"
#include "support/instance_gen.hpp"

using namespace ferrysched;

TEST_CASE("rational parse and render round trip") {
  for (const char* text : {"0", "7", "-4", "1/6", "-22/7", "3.25", "-0.125", "100/3"}) {
    Rational r = parse_rational(text);
    CHECK(parse_rational(render_exact(r)) == r);
  }
  CHECK(parse_rational("3.25") == Rational(13, 4));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("x"), SchemaError);
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rational(""), SchemaError);
}

TEST_CASE("decimal rendering is exact on terminating fractions") {
  CHECK(render_decimal(Rational(13, 4)) == "3.25");
  CHECK(render_decimal(Rational(-1, 8)) == "-0.125");
  CHECK(render_decimal(Rational(20)) == "20");
  CHECK(render_decimal(Rational(1, 5)) == "0.2");
  // non-terminating values re-parse to within the printed precision
  Rational third = Rational(1, 3);
  Rational back = parse_rational(render_decimal(third, 12));
  Rational err = third - back;
  if (err < 0) err = -err;
  CHECK(err < Rational(1, 1000000000));
  // and the rounded value renders to the same bytes again
  CHECK(render_decimal(back, 12) == render_decimal(third, 12));
}

TEST_CASE("floor ceil and int64 conversions") {
  CHECK(rational_floor(Rational(7, 2)) == 3);
  CHECK(rational_floor(Rational(-7, 2)) == -4);
  CHECK(rational_ceil(Rational(7, 2)) == 4);
  CHECK(rational_ceil(Rational(-7, 2)) == -3);
  CHECK(rational_floor(Rational(5)) == 5);
  CHECK(to_int64(Rational(-12)) == -12);
}

TEST_CASE("clock text parses and formats") {
  CHECK(parse_hhmm("08:00") == 480);
  CHECK(parse_hhmm("0:05") == 5);
  CHECK(parse_hhmm("24:00") == 1440);
  CHECK(parse_hhmm("25:30") == 1530);
  CHECK(format_hhmm(480) == "08:00");
  CHECK(format_hhmm(5) == "00:05");
  CHECK(format_hhmm(1530) == "25:30");
  CHECK_THROWS_AS(parse_hhmm("8h00"), SchemaError);
  CHECK_THROWS_AS(parse_hhmm("08:61"), SchemaError);
}

TEST_CASE("variable names are bijective") {
  std::vector<VarKey> keys = {
      {VarRole::FERRY_ARC, 2, {ArcKind::SERVICE, port_node(1, 3), port_node(2, 5)}},
      {VarRole::FERRY_ARC, 1, {ArcKind::WAITING, port_node(3, 1), port_node(3, 2)}},
      {VarRole::FERRY_ARC, 1, {ArcKind::IN_PORT, alpha_node(1), port_node(1, 1)}},
      {VarRole::FERRY_ARC, 1, {ArcKind::OUT_PORT, port_node(1, 9), beta_node(1)}},
      {VarRole::FERRY_ARC, 3, {ArcKind::SHIFT_LINK, alpha_node(3), gamma_node(3)}},
      {VarRole::PAX_ARC, 2, {ArcKind::SERVICE, port_node(1, 3), port_node(2, 5)}},
      {VarRole::PAX_ARC, 2, {ArcKind::DESTINATION, port_node(2, 5), zeta_node(2)}},
      {VarRole::PAX_ARC, 3, {ArcKind::INFEASIBILITY, port_node(1, 9), zeta_node(3)}},
  };
  for (const VarKey& k : keys) {
    std::string name = var_name(k);
    VarKey back = parse_var_name(name);
    CHECK(back == k);
    for (char c : name) {
      bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
      CHECK(ok);
    }
  }
  CHECK_THROWS_AS(parse_var_name("W_nonsense"), NameError);
  CHECK_THROWS_AS(parse_var_name("Y_f1"), NameError);
  CHECK_THROWS_AS(parse_var_name(""), NameError);
}

TEST_CASE("instance documents round trip") {
  for (const auto& [name, inst] : testgen::tiny_suite()) {
    CAPTURE(name);
    ProblemInstance back = load_instance(save_instance(inst));
    CHECK(back == inst);
  }
}

TEST_CASE("horizon grid arithmetic") {
  ProblemInstance inst = testgen::tiny_suite().front().inst;
  const Horizon& h = inst.horizon;
  CHECK(h.q() == 6);
  CHECK(h.slot_time(1) == 0);
  CHECK(h.slot_time(6) == 50);
  CHECK(h.snap_up(0) == 1);
  CHECK(h.snap_up(1) == 2);
  CHECK(h.snap_up(10) == 2);
  CHECK(h.snap_up(55) == 6);  // clamps to the last slot
}

TEST_CASE("schema violations are rejected with the offending path") {
  auto bad = [](const std::string& text) {
    CHECK_THROWS_AS(load_instance(text), Error);
  };
  bad("{");
  bad(R"({"horizon": {"start": 0, "end": 0, "delta": 10}, "ports": [{"id":1,"berths":1}],
        "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":1,"cost_docked_per_hour":1,"travel":{}}]})");
  // delta must divide the span
  bad(R"({"horizon": {"start": 0, "end": 65, "delta": 10}, "ports": [{"id":1,"berths":1},{"id":2,"berths":1}],
        "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":1,"cost_docked_per_hour":1,"travel":{}}]})");
  // port ids must be 1..n
  bad(R"({"horizon": {"start": 0, "end": 60, "delta": 10}, "ports": [{"id":1,"berths":1},{"id":3,"berths":1}],
        "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":1,"cost_docked_per_hour":1,"travel":{}}]})");
  // unknown keys are rejected
  bad(R"({"horizon": {"start": 0, "end": 60, "delta": 10, "tz": "UTC"}, "ports": [{"id":1,"berths":1},{"id":2,"berths":1}],
        "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":1,"cost_docked_per_hour":1,"travel":{}}]})");
  // demand placed outside the horizon
  bad(R"({"horizon": {"start": 0, "end": 60, "delta": 10}, "ports": [{"id":1,"berths":1},{"id":2,"berths":1}],
        "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":1,"cost_docked_per_hour":1,"travel":{"1-2":20}}],
        "demands": [{"from":1,"to":2,"time":70,"aeq":1}]})");
  // crew window outside TWO_SHIFT
  bad(R"({"horizon": {"start": 0, "end": 60, "delta": 10}, "ports": [{"id":1,"berths":1},{"id":2,"berths":1}],
        "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":1,"cost_docked_per_hour":1,"travel":{}}],
        "costs": {"mode": "BASIC", "crew_window": [20, 30]}})");
}

TEST_CASE("per minute rates divide the hourly figure exactly") {
  ProblemInstance inst = testgen::tiny_suite().front().inst;
  const Ferry& f = inst.ferries.front();
  CHECK(f.cost_moving_per_min == Rational(2));        // 120 per hour
  CHECK(f.cost_docked_per_min == Rational(1, 5));     // 12 per hour
}

TEST_CASE("unreachable demand is flagged but not fatal") {
  ProblemInstance inst = load_instance(R"({
    "horizon": {"start": 0, "end": 60, "delta": 10},
    "ports": [{"id":1,"berths":1},{"id":2,"berths":1},{"id":3,"berths":1}],
    "ferries": [{"id":1,"capacity":1,"home":1,"cost_moving_per_hour":60,"cost_docked_per_hour":6,
                 "travel":{"1-2":20,"2-1":20}}],
    "demands": [{"from":1,"to":3,"time":0,"aeq":1}]})");
  CHECK(!inst.warnings.empty());
}
