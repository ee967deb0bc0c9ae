#ifndef FERRYSCHED_SCHEDULE_HPP
#define FERRYSCHED_SCHEDULE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ferrysched/solver.hpp"

namespace ferrysched {

// one continuous stay at a berth; depart equals the grid time of the last
// slot held when the ferry never leaves again
struct PortCall {
  int port = 0;
  int arrive_min = 0;
  int depart_min = 0;

  bool operator==(const PortCall&) const = default;
};

struct SailingLeg {
  int from = 0, to = 0;
  int depart_min = 0, arrive_min = 0;
  std::map<int, long long> load;  // destination -> AEQ on board

  long long onboard() const;
  bool operator==(const SailingLeg&) const = default;
};

// Calls and legs are each in time order.  Consecutive calls are joined by a
// leg except across a crew break, where the ferry leaves the grid entirely.
struct FerryItinerary {
  int ferry = 0;
  bool shift1 = false, shift2 = false;  // crew shifts worked (TWO_SHIFT)
  std::vector<PortCall> calls;
  std::vector<SailingLeg> legs;

  bool operator==(const FerryItinerary&) const = default;
};

struct Schedule {
  Mode mode = Mode::BASIC;
  std::vector<FerryItinerary> ferries;  // one per ferry, id order
  // demand that never reaches its destination: (destination, port it is
  // stuck at) -> AEQ
  std::map<std::pair<int, int>, long long> stranded;

  bool operator==(const Schedule&) const = default;
};

struct Violation {
  std::string family;  // balance, berth, capacity, dwell, transfer, demand, domain
  std::string site;
  Rational magnitude;
};

struct ValidationReport {
  bool pass = false;
  std::vector<Violation> violations;
  std::map<std::string, bool> family_pass;
  Rational objective;  // recomputed from arc costs
  long long stranded_aeq = 0;
};

struct Kpis {
  Rational operating_cost;  // ferry-side cost, weight not applied
  long long total_travel_time_aeq_min = 0;
  long long stranded_aeq = 0;
  long long transfers_count = 0;  // AEQ units arriving at a port that is not their destination
};

// Follow each ferry's unit flow from source to sink; merge consecutive
// waiting arcs into one call.  PathError when the flow branches, skips, or
// leaves arcs unreachable.
Schedule extract_schedule(const ProblemInstance& inst, const Assignment& a);

// Canonical inverse: rebuilds ferry flows from calls and legs, passenger
// flows by forward propagation (units board exactly the recorded leg loads,
// leave the grid the moment they reach their destination, stranded units
// wait out the horizon).  PathError when the schedule is inconsistent.
Assignment encode_assignment(const ProblemInstance& inst, const Schedule& s);

// Semantic re-check of every constraint family straight from the instance;
// never throws on bad points, it reports them.
ValidationReport validate(const ProblemInstance& inst, const Assignment& a);

Kpis kpis(const ProblemInstance& inst, const Schedule& s, const Assignment& a);

// one row per call and leg, HH:MM times
std::string render_schedule(const ProblemInstance& inst, const Schedule& s);

}  // namespace ferrysched

#endif
