#ifndef FERRYSCHED_NAMES_HPP
#define FERRYSCHED_NAMES_HPP

#include <string>

#include "ferrysched/ip_model.hpp"

namespace ferrysched {

// Variable names encode the structural key bijectively:
//   Y_f<ferry>_<from>_<to>   ferry arc
//   X_d<dest>_<from>_<to>    passenger arc
// where a node is "<port>_<slot>" on the grid, or A/G/B (crew-side nodes of
// the owning ferry) or Z<port> (the destination sink).
// Only [A-Za-z0-9_] appears; names stay well under the 255-char cap.
std::string var_name(const VarKey& key);

// inverse of var_name; raises NameError on anything it did not produce
VarKey parse_var_name(const std::string& name);

// row site tokens share the node syntax above
std::string node_token(const NodeId& v);

}  // namespace ferrysched

#endif
