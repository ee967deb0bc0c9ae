#ifndef FERRYSCHED_SOLUTION_IO_HPP
#define FERRYSCHED_SOLUTION_IO_HPP

#include <string>

#include "ferrysched/solver.hpp"

namespace ferrysched {

// `objective <value>` header, then one `<name> <value>` line per nonzero
// variable in model order
std::string write_solution(const IpModel& model, const MipResult& result);

// Accepts this tool's files and external solver output in the same shape:
// values within 1/10000 of an integer are rounded, anything else is an
// IoError.  The objective is recomputed exactly; a header that disagrees
// beyond rounding is noted, not fatal.
MipResult read_solution(const IpModel& model, const std::string& text);

}  // namespace ferrysched

#endif
