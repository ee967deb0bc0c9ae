#ifndef FERRYSCHED_ORACLE_HPP
#define FERRYSCHED_ORACLE_HPP

#include "ferrysched/solver.hpp"

namespace ferrysched {

// hard caps; enumeration beyond them is hopeless by design
struct OracleLimits {
  int max_ferries = 2;
  int max_ports = 3;
  int max_q = 10;
  long long max_aeq = 6;
  long long work_budget = 50000000;  // elementary search steps
};

// Ground-truth optimum by exhaustive enumeration: every dwell-legal ferry
// traversal combination that respects berths, crossed with every integral
// routing of demand units over the arcs those traversals open.  Shares no
// LP or branching code with solve_mip.
MipResult brute_force_oracle(const ProblemInstance& inst, const OracleLimits& limits = {});

}  // namespace ferrysched

#endif
