#ifndef FERRYSCHED_MPS_HPP
#define FERRYSCHED_MPS_HPP

#include <string>

#include "ferrysched/ip_model.hpp"

namespace ferrysched {

// Classic sectioned MPS: ROWS, COLUMNS, RHS, BOUNDS; objective row COST;
// BV bounds for binaries, LI 0 for general integers; all columns inside an
// INTORG marker pair.  Values are decimal (render_decimal, 12 chars), model
// metadata rides in leading comment lines.  Output is byte-stable for a
// given model.
std::string export_mps(const IpModel& model);

// Reader for whitespace-tokenized MPS as produced by export_mps.  Variable
// roles, owners, and arcs are recovered from the name scheme; row tags from
// the name prefix.  Raises IoError on malformed input, NameError on foreign
// names.
IpModel parse_mps(const std::string& text);

// LP text for human inspection, one term per line
std::string export_lp_text(const IpModel& model);

}  // namespace ferrysched

#endif
