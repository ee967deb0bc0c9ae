#ifndef FERRYSCHED_INSTANCE_HPP
#define FERRYSCHED_INSTANCE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ferrysched/rational.hpp"

namespace ferrysched {

// Planning horizon [start,end] on a uniform minute grid.  Slot i (1-based)
// sits at start + delta*(i-1); there are q = (end-start)/delta slots, so the
// last slot is one delta before the end of the horizon.
struct Horizon {
  int start_min = 0;
  int end_min = 0;
  int delta_min = 1;

  int q() const { return (end_min - start_min) / delta_min; }
  int slot_time(int i) const { return start_min + delta_min * (i - 1); }

  // earliest slot at or after t, clamped to the last slot
  int snap_up(int t) const {
    if (t <= start_min) return 1;
    int i = 1 + (t - start_min + delta_min - 1) / delta_min;
    return i > q() ? q() : i;
  }

  bool operator==(const Horizon&) const = default;
};

struct Port {
  int id = 0;
  std::string name;
  int berths = 1;
  int transfer_slots = 0;

  bool operator==(const Port&) const = default;
};

struct Ferry {
  int id = 0;
  std::string name;
  int capacity_aeq = 0;
  int home_port = 0;
  Rational cost_moving_per_min;  // money per minute under way
  Rational cost_docked_per_min;  // money per minute spent idle at a port
  Rational shift_salary;         // money per crew shift worked
  std::map<int, int> dwell_slots;                // port -> mandatory slots after arrival
  std::map<std::pair<int, int>, int> travel_min; // (from,to) -> sailing minutes

  int dwell(int port) const {
    auto it = dwell_slots.find(port);
    return it == dwell_slots.end() ? 0 : it->second;
  }
  bool can_sail(int from, int to) const { return travel_min.count({from, to}) != 0; }

  bool operator==(const Ferry&) const = default;
};

struct Demand {
  int from = 0;
  int to = 0;
  int depart_min = 0;
  int aeq = 0;  // volume in car-equivalent units

  bool operator==(const Demand&) const = default;
};

enum class Mode { BASIC, HOMEPORT_FREE, TWO_SHIFT };
enum class DwellForm { FULL, SIMPLIFIED };
enum class TransferForm { FULL, SINGLE };

std::string to_string(Mode m);
std::string to_string(DwellForm f);
std::string to_string(TransferForm f);

struct CostParams {
  Rational lambda = 1;  // weight of the operator cost
  Rational nu = 1;      // weight of the passenger cost
  Rational big_m;       // penalty rate for unserved demand
  Mode mode = Mode::BASIC;
  DwellForm dwell_form = DwellForm::FULL;
  TransferForm transfer_form = TransferForm::FULL;
  std::optional<std::pair<int, int>> crew_window;  // [t1,t2], TWO_SHIFT only

  bool operator==(const CostParams&) const = default;
};

struct ProblemInstance {
  Horizon horizon;
  std::vector<Port> ports;    // ids 1..n, stored in id order
  std::vector<Ferry> ferries; // ids 1..m, stored in id order
  std::vector<Demand> demands;
  CostParams costs;
  std::vector<std::string> warnings;  // non-fatal ingestion findings

  int n_ports() const { return static_cast<int>(ports.size()); }
  int n_ferries() const { return static_cast<int>(ferries.size()); }
  const Port& port(int id) const { return ports[id - 1]; }
  const Ferry& ferry(int id) const { return ferries[id - 1]; }
  long long total_demand_aeq() const;

  // true when the short dwell form is exact for ferry f at port k:
  // the mandatory dwell is shorter than every sailing away from k
  bool simplified_dwell_ok(int f, int k) const;

  bool operator==(const ProblemInstance& o) const {
    return horizon == o.horizon && ports == o.ports && ferries == o.ferries &&
           demands == o.demands && costs == o.costs;
  }
};

// Parse and fully check an instance document (JSON text).  Unknown keys are
// rejected; violations raise SchemaError (shape) or InvariantError (cross-field
// rules), with the offending field path in the message.
ProblemInstance load_instance(const std::string& text);
ProblemInstance load_instance_file(const std::string& path);

// canonical document; load_instance(save_instance(i)) == i
std::string save_instance(const ProblemInstance& inst);

// stable fingerprint of the canonical document
std::string instance_hash(const ProblemInstance& inst);

}  // namespace ferrysched

#endif
