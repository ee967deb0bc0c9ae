#ifndef FERRYSCHED_SOLVER_HPP
#define FERRYSCHED_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ferrysched/ip_model.hpp"
#include "ferrysched/simplex.hpp"

namespace ferrysched {

// integral point, keyed structurally so it survives renumbering
using Assignment = std::map<VarKey, long long>;

struct LpSolution {
  LpStatus status = LpStatus::OPTIMAL;
  Rational objective;
  std::vector<Rational> values;  // per model variable
};

enum class MipStatus { OPTIMAL, FEASIBLE_GAP, INFEASIBLE, TIMEOUT_NO_INCUMBENT };
enum class BranchRule { MOST_FRACTIONAL_Y_FIRST, PSEUDO };
enum class SearchOrder { BEST_BOUND, DFS };

std::string to_string(MipStatus s);

struct SolverConfig {
  std::optional<double> time_limit_s;      // wall clock
  Rational gap_tol = Rational(1, 1000000000);
  std::optional<long long> node_limit;
  BranchRule branch_rule = BranchRule::MOST_FRACTIONAL_Y_FIRST;
  SearchOrder search = SearchOrder::BEST_BOUND;
  std::optional<Assignment> warm_start;
  bool float_mode = false;  // double-precision node relaxations, exact incumbents
};

struct BoundEvent {
  long long nodes = 0;  // node count when recorded
  Rational bound;
  std::optional<Rational> incumbent;
};

struct MipResult {
  MipStatus status = MipStatus::INFEASIBLE;
  std::optional<Assignment> incumbent;
  std::optional<Rational> objective;  // incumbent objective, exact
  Rational bound;                     // global lower bound at exit
  Rational gap;                       // (objective - bound) / objective, 0 when closed
  long long nodes = 0;
  double wall_time_s = 0;
  std::vector<BoundEvent> events;     // every bound or incumbent improvement
  std::vector<std::string> notes;
};

// LP relaxation at the model's own bounds, exact arithmetic
LpSolution solve_lp(const IpModel& model);

// double-precision run whose final basis is re-evaluated exactly; raises
// NumericalError when the exact point violates a bound by more than 1e-7
LpSolution solve_lp_float(const IpModel& model);

// branch and bound over the dual simplex; deterministic for a fixed config
MipResult solve_mip(const IpModel& model, const SolverConfig& config = {});

// Every ferry stays out of the way at the cheapest mode-legal anchorage and
// all demand waits at its origin until the last slot, then strands.  Feasible
// by construction in HOMEPORT_FREE and TWO_SHIFT; in BASIC the home-port
// waiting chains may collide with berth caps, so callers should validate.
Assignment make_idle_assignment(const ProblemInstance& inst, const IpModel& model);

Rational assignment_objective(const IpModel& model, const Assignment& a);

// names of rows the point violates, plus bound/integrality pseudo-entries;
// empty result means the point satisfies the whole model
std::vector<std::string> model_violations(const IpModel& model, const Assignment& a);

Rational mip_gap(const Rational& objective, const Rational& bound);

}  // namespace ferrysched

#endif
