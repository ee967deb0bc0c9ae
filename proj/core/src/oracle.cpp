#include "ferrysched/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ferrysched/errors.hpp"
#include "ferrysched/network.hpp"

namespace ferrysched {

namespace {

struct Work {
  long long left = 0;
  void tick(long long n = 1) {
    left -= n;
    if (left < 0) throw LimitError("oracle work budget exhausted");
  }
};

// cost formulas restated here on purpose; the oracle must not lean on the builder
Rational leg_cost(const ProblemInstance& inst, const Ferry& f, const Arc& a) {
  const Horizon& hz = inst.horizon;
  switch (a.kind) {
    case ArcKind::SERVICE:
      return Rational(node_time(hz, a.to) - node_time(hz, a.from)) * f.cost_moving_per_min;
    case ArcKind::WAITING: {
      if (inst.costs.mode == Mode::TWO_SHIFT && a.from.id == f.home_port) {
        auto [t1, t2] = *inst.costs.crew_window;
        if (t1 <= node_time(hz, a.from) && node_time(hz, a.to) <= t2) return inst.costs.big_m;
      }
      return Rational(hz.delta_min) * f.cost_docked_per_min;
    }
    case ArcKind::IN_PORT:
      return inst.costs.mode == Mode::TWO_SHIFT ? f.shift_salary : Rational(0);
    default:
      return 0;
  }
}

Rational ride_cost(const ProblemInstance& inst, const Arc& a) {
  switch (a.kind) {
    case ArcKind::SERVICE:
    case ArcKind::WAITING:
      return node_time(inst.horizon, a.to) - node_time(inst.horizon, a.from);
    case ArcKind::INFEASIBILITY:
      return inst.costs.big_m;
    default:
      return 0;
  }
}

struct FerryOption {
  std::vector<Arc> arcs;
  Rational cost;  // lambda already applied
};

// the hold rule rewritten for a single traversal: after a service arrival the
// ferry keeps the berth for the mandated slots (long form), or must have held
// it before a service departure (short form)
bool dwell_legal(const ProblemInstance& inst, const Ferry& f, const std::vector<Arc>& path,
                 int q) {
  std::set<Arc> present(path.begin(), path.end());
  auto waits = [&](int port, int j) {
    return present.count({ArcKind::WAITING, port_node(port, j), port_node(port, j + 1)}) != 0;
  };
  for (const Arc& a : path) {
    if (a.kind != ArcKind::SERVICE) continue;
    if (inst.costs.dwell_form == DwellForm::FULL) {
      int w = f.dwell(a.to.id);
      if (w == 0) continue;
      int i = a.to.slot, r = std::min(i + w, q);
      for (int j = i; j < r; ++j)
        if (!waits(a.to.id, j)) return false;
    } else {
      int w = f.dwell(a.from.id);
      if (w == 0) continue;
      int j = a.from.slot - w;
      if (j < 1) continue;
      if (!waits(a.from.id, j)) return false;
    }
  }
  return true;
}

std::vector<FerryOption> enumerate_ferry_paths(const ProblemInstance& inst,
                                               const FerryFlowNetwork& net, Work& work) {
  const Ferry& f = inst.ferry(net.ferry_id);
  const int q = inst.horizon.q();
  std::map<NodeId, std::vector<Arc>> out;
  for (const Arc& a : net.arcs) out[a.from].push_back(a);

  std::vector<FerryOption> options;
  std::vector<Arc> path;
  Rational cost = 0;
  auto dfs = [&](auto&& self, const NodeId& v) -> void {
    work.tick();
    if (v == net.sink) {
      if (dwell_legal(inst, f, path, q)) options.push_back({path, cost});
      return;
    }
    auto it = out.find(v);
    if (it == out.end()) return;
    for (const Arc& a : it->second) {
      Rational c = inst.costs.lambda * leg_cost(inst, f, a);
      path.push_back(a);
      cost += c;
      self(self, a.to);
      cost -= c;
      path.pop_back();
    }
  };
  dfs(dfs, net.source);
  std::stable_sort(options.begin(), options.end(),
                   [](const FerryOption& a, const FerryOption& b) { return a.cost < b.cost; });
  return options;
}

struct TokenGroup {
  int dest = 0;
  NodeId origin;
  long long count = 0;
  std::vector<std::vector<Arc>> paths;  // sorted by cost
  std::vector<Rational> costs;          // aligned, nu applied
};

// every origin->sink route a demand unit could take, honouring which service
// arcs the chosen ferry traversals open; capacity counts are settled later
void enumerate_token_paths(const ProblemInstance& inst, const PassengerNetwork& pn,
                           TokenGroup& g, const std::map<Arc, long long>* open, Work& work) {
  std::map<NodeId, std::vector<Arc>> out;
  for (const Arc& a : pn.arcs) out[a.from].push_back(a);
  for (auto& [v, list] : out) std::sort(list.begin(), list.end());

  g.paths.clear();
  g.costs.clear();
  NodeId sink = zeta_node(g.dest);
  std::vector<Arc> path;
  Rational cost = 0;
  auto dfs = [&](auto&& self, const NodeId& v) -> void {
    work.tick();
    if (v == sink) {
      g.paths.push_back(path);
      g.costs.push_back(cost);
      return;
    }
    auto it = out.find(v);
    if (it == out.end()) return;
    for (const Arc& a : it->second) {
      if (a.kind == ArcKind::SERVICE && open && open->count(a) == 0) continue;
      Rational c = inst.costs.nu * ride_cost(inst, a);
      path.push_back(a);
      cost += c;
      self(self, a.to);
      cost -= c;
      path.pop_back();
    }
  };
  dfs(dfs, g.origin);

  std::vector<int> order(g.paths.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.costs[a] < g.costs[b]; });
  std::vector<std::vector<Arc>> paths;
  std::vector<Rational> costs;
  for (int i : order) {
    paths.push_back(std::move(g.paths[i]));
    costs.push_back(g.costs[i]);
  }
  g.paths = std::move(paths);
  g.costs = std::move(costs);
}

// transfer rows restated on actual loads: arrivals within the connection
// window at a foreign port must be covered by units holding the waiting arc
bool transfer_legal(const ProblemInstance& inst,
                    const std::set<std::pair<int, int>>& anchors,
                    const std::map<std::pair<int, int>, long long>& arr,
                    const std::map<std::pair<int, int>, long long>& wait, int dest) {
  const int q = inst.horizon.q();
  auto at = [](const std::map<std::pair<int, int>, long long>& m, int k, int i) {
    auto it = m.find({k, i});
    return it == m.end() ? 0LL : it->second;
  };
  for (const auto& [k, i] : anchors) {
    if (k == dest || i == q) continue;
    int T = inst.port(k).transfer_slots;
    if (T == 0) continue;
    if (inst.costs.transfer_form == TransferForm::SINGLE) {
      if (at(arr, k, i) > at(wait, k, i)) return false;
    } else {
      int r = std::min(i + T, q);
      long long cum = 0;
      for (int t = i; t < r; ++t) {
        cum += at(arr, k, t);
        if (cum > at(wait, k, t)) return false;
      }
    }
  }
  return true;
}

}  // namespace

MipResult brute_force_oracle(const ProblemInstance& inst, const OracleLimits& limits) {
  auto t0 = std::chrono::steady_clock::now();
  if (inst.n_ferries() > limits.max_ferries)
    throw LimitError("oracle cap: ferries " + std::to_string(inst.n_ferries()) + " > " +
                     std::to_string(limits.max_ferries));
  if (inst.n_ports() > limits.max_ports)
    throw LimitError("oracle cap: ports " + std::to_string(inst.n_ports()) + " > " +
                     std::to_string(limits.max_ports));
  if (inst.horizon.q() > limits.max_q)
    throw LimitError("oracle cap: q " + std::to_string(inst.horizon.q()) + " > " +
                     std::to_string(limits.max_q));
  if (inst.total_demand_aeq() > limits.max_aeq)
    throw LimitError("oracle cap: demand " + std::to_string(inst.total_demand_aeq()) + " > " +
                     std::to_string(limits.max_aeq));

  if (inst.costs.dwell_form == DwellForm::SIMPLIFIED)
    for (const Ferry& f : inst.ferries)
      for (const Port& p : inst.ports)
        if (f.dwell(p.id) > 0 && !inst.simplified_dwell_ok(f.id, p.id))
          throw FormError("short dwell form invalid for ferry " + std::to_string(f.id) +
                          " at port " + std::to_string(p.id));
  if (inst.costs.transfer_form == TransferForm::SINGLE)
    for (const Port& p : inst.ports)
      if (p.transfer_slots >= 2 && p.berths != 1)
        throw FormError("single-row transfer form invalid at port " + std::to_string(p.id));

  Work work{limits.work_budget};
  const int q = inst.horizon.q();
  const int m = inst.n_ferries();

  std::vector<FerryFlowNetwork> nets;
  for (const Ferry& f : inst.ferries) nets.push_back(build_ferry_network(inst, f.id));
  SupergraphIndex super = build_supergraph(inst, nets);

  std::set<std::pair<int, int>> anchors;  // (port, slot) with incoming service arcs
  for (const Arc& a : super.arcs)
    if (a.kind == ArcKind::SERVICE) anchors.insert({a.to.id, a.to.slot});

  std::vector<std::vector<FerryOption>> options;
  for (const auto& net : nets) options.push_back(enumerate_ferry_paths(inst, net, work));

  std::map<int, long long> dest_aeq;
  for (const Demand& d : inst.demands)
    if (d.aeq > 0) dest_aeq[d.to] += d.aeq;
  std::map<int, PassengerNetwork> pax;
  for (const auto& [dest, total] : dest_aeq)
    pax.emplace(dest, build_passenger_network(inst, super, dest));

  std::map<std::pair<int, NodeId>, long long> group_count;
  for (const Demand& d : inst.demands)
    if (d.aeq > 0)
      group_count[{d.to, port_node(d.from, inst.horizon.snap_up(d.depart_min))}] += d.aeq;
  std::vector<TokenGroup> groups;
  for (const auto& [key, count] : group_count)
    groups.push_back({key.first, key.second, count, {}, {}});

  // combo-independent floor on the demand side, from unrestricted routings
  Rational pax_floor = 0;
  for (TokenGroup& g : groups) {
    enumerate_token_paths(inst, pax.at(g.dest), g, nullptr, work);
    if (g.paths.empty()) throw InvariantError("demand unit with no route to its sink");
    pax_floor += Rational(g.count) * g.costs.front();
  }

  bool have_best = false;
  Rational best = 0;
  Assignment best_assign;
  long long combos_seen = 0;

  // per-token choice during assembly
  struct Pick {
    int group = 0, path = 0;
  };
  std::vector<Pick> picks;
  std::vector<std::pair<int, int>> token_of;  // (group, ordinal within group)
  for (size_t gi = 0; gi < groups.size(); ++gi)
    for (long long c = 0; c < groups[gi].count; ++c)
      token_of.push_back({static_cast<int>(gi), static_cast<int>(c)});
  const int n_tokens = static_cast<int>(token_of.size());

  std::vector<int> choice(m, 0);
  auto combo_done = [&]() {
    for (int f = 0; f < m; ++f)
      if (choice[f] >= static_cast<int>(options[f].size())) return true;
    return false;
  };
  if (m == 0 || !combo_done()) {
    while (true) {
      ++combos_seen;
      work.tick(8);

      Rational ferry_cost = 0;
      for (int f = 0; f < m; ++f) ferry_cost += options[f][choice[f]].cost;

      bool skip = have_best && ferry_cost + pax_floor >= best;
      if (!skip) {
        // berth occupancy per waiting arc
        std::map<std::pair<int, int>, int> occupancy;
        for (int f = 0; f < m; ++f)
          for (const Arc& a : options[f][choice[f]].arcs)
            if (a.kind == ArcKind::WAITING) occupancy[{a.from.id, a.from.slot}] += 1;
        for (const auto& [key, n] : occupancy)
          if (n > inst.port(key.first).berths) {
            skip = true;
            break;
          }
      }

      if (!skip) {
        std::map<Arc, long long> open;  // pooled capacity on opened service arcs
        for (int f = 0; f < m; ++f)
          for (const Arc& a : options[f][choice[f]].arcs)
            if (a.kind == ArcKind::SERVICE) open[a] += inst.ferry(nets[f].ferry_id).capacity_aeq;

        bool viable = true;
        Rational combo_floor = 0;
        for (TokenGroup& g : groups) {
          enumerate_token_paths(inst, pax.at(g.dest), g, &open, work);
          if (g.paths.empty()) {
            viable = false;
            break;
          }
          combo_floor += Rational(g.count) * g.costs.front();
        }

        if (viable && (!have_best || ferry_cost + combo_floor < best)) {
          picks.assign(n_tokens, Pick{});
          std::map<Arc, long long> used;
          auto place = [&](auto&& self, int t, const Rational& partial) -> void {
            work.tick();
            if (t == n_tokens) {
              // loads per commodity; commodities without arrivals hold trivially
              std::map<int, std::map<std::pair<int, int>, long long>> arr, wait;
              for (int u = 0; u < n_tokens; ++u) {
                const TokenGroup& g = groups[picks[u].group];
                for (const Arc& a : g.paths[picks[u].path]) {
                  if (a.kind == ArcKind::SERVICE) arr[g.dest][{a.to.id, a.to.slot}] += 1;
                  if (a.kind == ArcKind::WAITING) wait[g.dest][{a.from.id, a.from.slot}] += 1;
                }
              }
              for (const auto& [dest, a] : arr)
                if (!transfer_legal(inst, anchors, a, wait[dest], dest)) return;
              Rational total = ferry_cost + partial;
              if (!have_best || total < best) {
                have_best = true;
                best = total;
                best_assign.clear();
                for (int f = 0; f < m; ++f)
                  for (const Arc& a : options[f][choice[f]].arcs)
                    best_assign[{VarRole::FERRY_ARC, nets[f].ferry_id, a}] = 1;
                for (int u = 0; u < n_tokens; ++u) {
                  const TokenGroup& g = groups[picks[u].group];
                  for (const Arc& a : g.paths[picks[u].path])
                    best_assign[{VarRole::PAX_ARC, g.dest, a}] += 1;
                }
              }
              return;
            }
            auto [gi, ordinal] = token_of[t];
            const TokenGroup& g = groups[gi];
            int start = ordinal > 0 ? picks[t - 1].path : 0;
            for (int p = start; p < static_cast<int>(g.paths.size()); ++p) {
              // identical later units cost at least this much; unrelated
              // groups at least their cheapest route
              Rational bound = partial + g.costs[p] * (g.count - ordinal);
              for (size_t h = gi + 1; h < groups.size(); ++h)
                bound += groups[h].costs.front() * groups[h].count;
              if (have_best && ferry_cost + bound >= best) break;

              bool fits = true;
              for (const Arc& a : g.paths[p])
                if (a.kind == ArcKind::SERVICE && used[a] + 1 > open[a]) {
                  fits = false;
                  break;
                }
              if (!fits) continue;
              for (const Arc& a : g.paths[p])
                if (a.kind == ArcKind::SERVICE) used[a] += 1;
              picks[t] = {gi, p};
              self(self, t + 1, partial + g.costs[p]);
              for (const Arc& a : g.paths[p])
                if (a.kind == ArcKind::SERVICE) used[a] -= 1;
            }
          };
          place(place, 0, Rational(0));
        }
      }

      // next combo, rightmost ferry advances first
      int f = m - 1;
      while (f >= 0) {
        if (++choice[f] < static_cast<int>(options[f].size())) break;
        choice[f] = 0;
        --f;
      }
      if (f < 0) break;
    }
  }

  MipResult res;
  res.nodes = combos_seen;
  res.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.notes.push_back("exhaustive enumeration");
  if (have_best) {
    res.status = MipStatus::OPTIMAL;
    res.incumbent = best_assign;
    res.objective = best;
    res.bound = best;
    res.gap = 0;
    res.events.push_back({combos_seen, best, best});
  } else {
    res.status = MipStatus::INFEASIBLE;
    res.bound = 0;
    res.gap = 1;
  }
  return res;
}

}  // namespace ferrysched
