#include "ferrysched/network.hpp"

#include <algorithm>

#include "ferrysched/errors.hpp"

namespace ferrysched {

NodeId port_node(int port, int slot) { return {NodeKind::PORT_TIME, port, slot}; }
NodeId alpha_node(int ferry) { return {NodeKind::ALPHA, ferry, 0}; }
NodeId gamma_node(int ferry) { return {NodeKind::GAMMA, ferry, 0}; }
NodeId beta_node(int ferry) { return {NodeKind::BETA, ferry, 0}; }
NodeId zeta_node(int port) { return {NodeKind::ZETA, port, 0}; }

std::string to_string(const NodeId& v) {
  switch (v.kind) {
    case NodeKind::PORT_TIME: return std::to_string(v.id) + "_" + std::to_string(v.slot);
    case NodeKind::ALPHA: return "A";
    case NodeKind::GAMMA: return "G";
    case NodeKind::BETA: return "B";
    case NodeKind::ZETA: return "Z" + std::to_string(v.id);
  }
  return "?";
}

std::string to_string(ArcKind k) {
  switch (k) {
    case ArcKind::SERVICE: return "SERVICE";
    case ArcKind::WAITING: return "WAITING";
    case ArcKind::DESTINATION: return "DESTINATION";
    case ArcKind::INFEASIBILITY: return "INFEASIBILITY";
    case ArcKind::IN_PORT: return "IN_PORT";
    case ArcKind::OUT_PORT: return "OUT_PORT";
    case ArcKind::SHIFT_LINK: return "SHIFT_LINK";
  }
  return "?";
}

int node_time(const Horizon& h, const NodeId& v) {
  if (v.kind != NodeKind::PORT_TIME) throw Error("node has no time: " + to_string(v));
  return h.slot_time(v.slot);
}

int FerryFlowNetwork::arc_index(const Arc& a) const {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
  if (it == arcs.end() || !(*it == a)) return -1;
  return static_cast<int>(it - arcs.begin());
}

std::map<Arc, int> FerryFlowNetwork::build_arc_index() const {
  std::map<Arc, int> index;
  for (std::size_t i = 0; i < arcs.size(); ++i) index[arcs[i]] = static_cast<int>(i);
  return index;
}

FerryFlowNetwork build_ferry_network(const ProblemInstance& inst, int ferry_id) {
  const Horizon& hz = inst.horizon;
  const Ferry& f = inst.ferry(ferry_id);
  int q = hz.q();

  FerryFlowNetwork net;
  net.ferry_id = ferry_id;
  net.mode = inst.costs.mode;

  for (int k = 1; k <= inst.n_ports(); ++k)
    for (int i = 1; i <= q; ++i) net.nodes.push_back(port_node(k, i));

  for (const auto& [route, minutes] : f.travel_min) {
    auto [k, h] = route;
    // land on the first slot no earlier than departure plus sailing time
    int hop = (minutes + hz.delta_min - 1) / hz.delta_min;
    for (int i = 1; i + hop <= q; ++i)
      net.arcs.push_back({ArcKind::SERVICE, port_node(k, i), port_node(h, i + hop)});
  }
  for (int k = 1; k <= inst.n_ports(); ++k)
    for (int i = 1; i < q; ++i)
      net.arcs.push_back({ArcKind::WAITING, port_node(k, i), port_node(k, i + 1)});

  int home = f.home_port;
  switch (inst.costs.mode) {
    case Mode::BASIC:
      net.source = port_node(home, 1);
      net.sink = port_node(home, q);
      break;
    case Mode::HOMEPORT_FREE: {
      net.source = alpha_node(ferry_id);
      net.sink = beta_node(ferry_id);
      net.nodes.push_back(net.source);
      net.nodes.push_back(net.sink);
      for (int i = 1; i <= q - 1; ++i)
        net.arcs.push_back({ArcKind::IN_PORT, net.source, port_node(home, i)});
      for (int i = 2; i <= q; ++i)
        net.arcs.push_back({ArcKind::OUT_PORT, port_node(home, i), net.sink});
      break;
    }
    case Mode::TWO_SHIFT: {
      auto [t1, t2] = *inst.costs.crew_window;
      net.source = alpha_node(ferry_id);
      net.sink = beta_node(ferry_id);
      NodeId gamma = gamma_node(ferry_id);
      net.nodes.push_back(net.source);
      net.nodes.push_back(gamma);
      net.nodes.push_back(net.sink);
      bool window_holds_an_arc = false;
      for (int i = 1; i < q; ++i)
        if (t1 <= hz.slot_time(i) && hz.slot_time(i + 1) <= t2) window_holds_an_arc = true;
      if (!window_holds_an_arc)
        throw ConfigError("ferry " + std::to_string(ferry_id) +
                          ": no waiting arc at its home port fits inside the crew window");
      for (int i = 1; i <= q; ++i) {
        int t = hz.slot_time(i);
        if (t < t1) net.arcs.push_back({ArcKind::IN_PORT, net.source, port_node(home, i)});
        if (i > 1 && t <= t1) net.arcs.push_back({ArcKind::OUT_PORT, port_node(home, i), gamma});
        if (i < q && t >= t2) net.arcs.push_back({ArcKind::IN_PORT, gamma, port_node(home, i)});
        if (t > t2) net.arcs.push_back({ArcKind::OUT_PORT, port_node(home, i), net.sink});
      }
      net.arcs.push_back({ArcKind::SHIFT_LINK, net.source, gamma});
      net.arcs.push_back({ArcKind::SHIFT_LINK, gamma, net.sink});
      break;
    }
  }

  std::sort(net.arcs.begin(), net.arcs.end());
  return net;
}

SupergraphIndex build_supergraph(const ProblemInstance& inst, const std::vector<FerryFlowNetwork>& nets) {
  (void)inst;
  SupergraphIndex super;
  if (nets.empty()) throw ModeError("no ferry networks given");
  super.mode = nets.front().mode;
  std::map<Arc, std::vector<int>> merged;
  for (const FerryFlowNetwork& net : nets) {
    if (net.mode != super.mode) throw ModeError("ferry networks built in different modes");
    for (const Arc& a : net.arcs) {
      if (a.kind != ArcKind::SERVICE && a.kind != ArcKind::WAITING) continue;
      merged[a].push_back(net.ferry_id);
    }
  }
  for (auto& [arc, ids] : merged) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    super.arcs.push_back(arc);
    super.ferry_ids.push_back(ids);
  }
  return super;
}

PassengerNetwork build_passenger_network(const ProblemInstance& inst, const SupergraphIndex& super,
                                         int dest_port) {
  const Horizon& hz = inst.horizon;
  int q = hz.q();
  PassengerNetwork net;
  net.dest_port = dest_port;

  for (int k = 1; k <= inst.n_ports(); ++k)
    for (int i = 1; i <= q; ++i) net.nodes.push_back(port_node(k, i));
  NodeId sink = zeta_node(dest_port);
  net.nodes.push_back(sink);

  net.arcs = super.arcs;
  for (int i = 1; i <= q; ++i)
    net.arcs.push_back({ArcKind::DESTINATION, port_node(dest_port, i), sink});
  // anyone still away at the last slot gets a priced way out
  for (int s = 1; s <= inst.n_ports(); ++s)
    if (s != dest_port) net.arcs.push_back({ArcKind::INFEASIBILITY, port_node(s, q), sink});
  std::sort(net.arcs.begin(), net.arcs.end());

  for (const Demand& d : inst.demands) {
    if (d.to != dest_port) continue;
    net.supplies[port_node(d.from, hz.snap_up(d.depart_min))] += d.aeq;
    net.total_aeq += d.aeq;
  }
  net.supplies[sink] = -net.total_aeq;
  return net;
}

std::string dump_edges(const std::vector<Arc>& arcs) {
  std::string out;
  for (const Arc& a : arcs) {
    out += to_string(a.kind);
    out += ' ';
    out += to_string(a.from);
    out += ' ';
    out += to_string(a.to);
    out += '\n';
  }
  return out;
}

}  // namespace ferrysched
