#ifndef FERRYSCHED_NETWORK_HPP
#define FERRYSCHED_NETWORK_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ferrysched/instance.hpp"

namespace ferrysched {

// PORT_TIME carries (port, slot); ZETA the destination port; the crew-side
// nodes ALPHA/GAMMA/BETA carry the ferry id.  The declaration order of both
// enums fixes the canonical sort order of nodes and arcs everywhere.
enum class NodeKind { PORT_TIME, ALPHA, GAMMA, BETA, ZETA };

struct NodeId {
  NodeKind kind = NodeKind::PORT_TIME;
  int id = 0;    // port id, or ferry id for ALPHA/GAMMA/BETA
  int slot = 0;  // PORT_TIME only

  auto operator<=>(const NodeId&) const = default;
};

NodeId port_node(int port, int slot);
NodeId alpha_node(int ferry);
NodeId gamma_node(int ferry);
NodeId beta_node(int ferry);
NodeId zeta_node(int port);

std::string to_string(const NodeId& v);

enum class ArcKind { SERVICE, WAITING, DESTINATION, INFEASIBILITY, IN_PORT, OUT_PORT, SHIFT_LINK };

std::string to_string(ArcKind k);

struct Arc {
  ArcKind kind = ArcKind::SERVICE;
  NodeId from, to;

  auto operator<=>(const Arc&) const = default;
};

// one ferry's flow network over the time-expanded grid
struct FerryFlowNetwork {
  int ferry_id = 0;
  Mode mode = Mode::BASIC;
  NodeId source, sink;          // the unit of flow runs source -> sink
  std::vector<NodeId> nodes;    // canonical order, specials last
  std::vector<Arc> arcs;        // canonical order, no duplicates

  int arc_index(const Arc& a) const;  // -1 when absent
  std::map<Arc, int> build_arc_index() const;
};

// union of the ferries' port-time arcs, remembering who can run each arc
struct SupergraphIndex {
  Mode mode = Mode::BASIC;
  std::vector<Arc> arcs;                    // SERVICE then WAITING, canonical order
  std::vector<std::vector<int>> ferry_ids;  // aligned with arcs, each sorted
};

// one commodity: everyone travelling to dest_port
struct PassengerNetwork {
  int dest_port = 0;
  std::vector<NodeId> nodes;  // port-time grid plus the one sink
  std::vector<Arc> arcs;      // supergraph arcs, then DESTINATION, then INFEASIBILITY
  std::map<NodeId, long long> supplies;  // demand at snapped origins, negative total at the sink
  long long total_aeq = 0;
};

// Time-expand one ferry.  Service arcs land on the first slot reachable after
// sailing; departures whose landing falls past the horizon are dropped.
// TWO_SHIFT checks that the home port can hold the ferry through the crew
// window, and raises ConfigError when it cannot.
FerryFlowNetwork build_ferry_network(const ProblemInstance& inst, int ferry_id);

// union over ferries; all networks must be in the same mode
SupergraphIndex build_supergraph(const ProblemInstance& inst, const std::vector<FerryFlowNetwork>& nets);

PassengerNetwork build_passenger_network(const ProblemInstance& inst, const SupergraphIndex& super,
                                         int dest_port);

// plain text, one arc per line, for inspection and golden tests
std::string dump_edges(const std::vector<Arc>& arcs);

int node_time(const Horizon& h, const NodeId& v);

}  // namespace ferrysched

#endif
