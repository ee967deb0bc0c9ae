#ifndef FERRYSCHED_GANTT_HPP
#define FERRYSCHED_GANTT_HPP

#include <string>

#include "ferrysched/schedule.hpp"

namespace ferrysched {

// `ferry,port,time_min` rows, one vertex per port-call boundary
std::string gantt_csv(const Schedule& s);

// Standalone SVG: ports across the top, time flowing down the page, one
// polyline per ferry (broken across crew breaks), hour ruling, legend.
std::string gantt_svg(const ProblemInstance& inst, const Schedule& s);

}  // namespace ferrysched

#endif
