#include "ferrysched/schedule.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ferrysched/errors.hpp"
#include "ferrysched/names.hpp"
#include "ferrysched/timeutil.hpp"

namespace ferrysched {

long long SailingLeg::onboard() const {
  long long t = 0;
  for (const auto& [d, v] : load) t += v;
  return t;
}

namespace {

// cost formulas restated; the validator must not lean on the builder
Rational ferry_g(const ProblemInstance& inst, const Ferry& f, const Arc& a) {
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

Rational pax_c(const ProblemInstance& inst, const Arc& a) {
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

int slot_of(const Horizon& hz, int t, const char* what) {
  int off = t - hz.start_min;
  if (off < 0 || off % hz.delta_min != 0 || off / hz.delta_min + 1 > hz.q())
    throw PathError(std::string(what) + " time " + std::to_string(t) + " is off the grid");
  return off / hz.delta_min + 1;
}

long long at(const std::map<std::pair<int, int>, long long>& m, int k, int i) {
  auto it = m.find({k, i});
  return it == m.end() ? 0LL : it->second;
}

}  // namespace

Schedule extract_schedule(const ProblemInstance& inst, const Assignment& a) {
  const Horizon& hz = inst.horizon;
  const int q = hz.q();
  Schedule s;
  s.mode = inst.costs.mode;

  for (const Ferry& f : inst.ferries) {
    FerryItinerary it;
    it.ferry = f.id;

    std::map<NodeId, std::vector<Arc>> out;
    int n_used = 0;
    for (const auto& [key, val] : a) {
      if (key.role != VarRole::FERRY_ARC || key.owner != f.id || val == 0) continue;
      if (val != 1)
        throw PathError("ferry " + std::to_string(f.id) + " carries flow " + std::to_string(val) +
                        " on " + var_name(key));
      out[key.arc.from].push_back(key.arc);
      ++n_used;
    }

    NodeId source = s.mode == Mode::BASIC ? port_node(f.home_port, 1) : alpha_node(f.id);
    NodeId sink = s.mode == Mode::BASIC ? port_node(f.home_port, q) : beta_node(f.id);
    NodeId v = source;
    PortCall call;
    bool open = false;
    if (v.kind == NodeKind::PORT_TIME) {
      call = {v.id, node_time(hz, v), node_time(hz, v)};
      open = true;
    }

    int consumed = 0;
    while (v != sink) {
      auto o = out.find(v);
      if (o == out.end())
        throw PathError("ferry " + std::to_string(f.id) + " flow stops at " + to_string(v));
      if (o->second.size() > 1)
        throw PathError("ferry " + std::to_string(f.id) + " flow branches at " + to_string(v));
      Arc arc = o->second.front();
      out.erase(o);
      ++consumed;

      switch (arc.kind) {
        case ArcKind::WAITING:
          call.depart_min = node_time(hz, arc.to);
          break;
        case ArcKind::SERVICE: {
          it.calls.push_back(call);
          it.legs.push_back(
              {arc.from.id, arc.to.id, node_time(hz, arc.from), node_time(hz, arc.to), {}});
          call = {arc.to.id, node_time(hz, arc.to), node_time(hz, arc.to)};
          break;
        }
        case ArcKind::IN_PORT:
          if (s.mode == Mode::TWO_SHIFT) {
            if (arc.from.kind == NodeKind::ALPHA) it.shift1 = true;
            if (arc.from.kind == NodeKind::GAMMA) it.shift2 = true;
          }
          call = {arc.to.id, node_time(hz, arc.to), node_time(hz, arc.to)};
          open = true;
          break;
        case ArcKind::OUT_PORT:
          it.calls.push_back(call);
          open = false;
          break;
        case ArcKind::SHIFT_LINK:
          break;
        default:
          throw PathError("ferry " + std::to_string(f.id) + " flow on a passenger arc at " +
                          to_string(v));
      }
      v = arc.to;
      if (consumed > n_used)
        throw PathError("ferry " + std::to_string(f.id) + " flow does not reach its sink");
    }
    if (open) it.calls.push_back(call);
    if (consumed != n_used)
      throw PathError("ferry " + std::to_string(f.id) + " has " +
                      std::to_string(n_used - consumed) + " arcs off its path");
    s.ferries.push_back(std::move(it));
  }

  // passenger side: leg loads, pooled arcs split greedily by ferry id up to
  // each ferry's capacity, overflow dumped on the last sharer
  std::map<Arc, std::vector<std::pair<int, int>>> sharers;  // arc -> (ferry idx, leg idx)
  for (size_t fi = 0; fi < s.ferries.size(); ++fi)
    for (size_t li = 0; li < s.ferries[fi].legs.size(); ++li) {
      const SailingLeg& leg = s.ferries[fi].legs[li];
      Arc arc{ArcKind::SERVICE, port_node(leg.from, slot_of(hz, leg.depart_min, "leg depart")),
              port_node(leg.to, slot_of(hz, leg.arrive_min, "leg arrive"))};
      sharers[arc].push_back({static_cast<int>(fi), static_cast<int>(li)});
    }

  std::map<Arc, std::map<int, long long>> arc_load;  // service arc -> dest -> AEQ
  for (const auto& [key, val] : a) {
    if (key.role != VarRole::PAX_ARC || val == 0) continue;
    if (key.arc.kind == ArcKind::SERVICE) arc_load[key.arc][key.owner] += val;
    if (key.arc.kind == ArcKind::INFEASIBILITY)
      s.stranded[{key.owner, key.arc.from.id}] += val;
  }
  for (const auto& [arc, dests] : arc_load) {
    auto sh = sharers.find(arc);
    if (sh == sharers.end()) continue;  // load with no leg, left to the validator
    const auto& group = sh->second;
    std::vector<long long> room;
    for (const auto& [fi, li] : group)
      room.push_back(inst.ferry(s.ferries[fi].ferry).capacity_aeq);
    size_t pos = 0;
    for (const auto& [dest, amount] : dests) {
      long long left = amount;
      while (left > 0) {
        if (pos + 1 < group.size() && room[pos] == 0) {
          ++pos;
          continue;
        }
        long long take = pos + 1 < group.size() ? std::min(left, room[pos]) : left;
        auto [fi, li] = group[pos];
        s.ferries[fi].legs[li].load[dest] += take;
        room[pos] -= take;
        left -= take;
      }
    }
  }
  return s;
}

Assignment encode_assignment(const ProblemInstance& inst, const Schedule& s) {
  if (s.mode != inst.costs.mode) throw PathError("schedule mode differs from instance mode");
  const Horizon& hz = inst.horizon;
  const int q = hz.q();
  Assignment a;

  for (const FerryItinerary& it : s.ferries) {
    const Ferry& f = inst.ferry(it.ferry);
    auto add_y = [&](ArcKind kind, const NodeId& u, const NodeId& v) {
      if (!a.emplace(VarKey{VarRole::FERRY_ARC, f.id, Arc{kind, u, v}}, 1).second)
        throw PathError("ferry " + std::to_string(f.id) + " reuses an arc");
    };

    if (it.calls.empty()) {
      if (!it.legs.empty()) throw PathError("legs without calls on ferry " + std::to_string(f.id));
      if (s.mode != Mode::TWO_SHIFT)
        throw PathError("empty itinerary for ferry " + std::to_string(f.id));
      add_y(ArcKind::SHIFT_LINK, alpha_node(f.id), gamma_node(f.id));
      add_y(ArcKind::SHIFT_LINK, gamma_node(f.id), beta_node(f.id));
      continue;
    }

    bool gamma_used = false;
    const PortCall& first = it.calls.front();
    NodeId first_node = port_node(first.port, slot_of(hz, first.arrive_min, "call arrive"));
    if (s.mode == Mode::BASIC) {
      if (first.port != f.home_port || first.arrive_min != hz.slot_time(1))
        throw PathError("ferry " + std::to_string(f.id) + " does not start at home");
    } else if (s.mode == Mode::HOMEPORT_FREE || it.shift1) {
      add_y(ArcKind::IN_PORT, alpha_node(f.id), first_node);
    } else {
      add_y(ArcKind::SHIFT_LINK, alpha_node(f.id), gamma_node(f.id));
      add_y(ArcKind::IN_PORT, gamma_node(f.id), first_node);
      gamma_used = true;
    }

    size_t lc = 0;
    for (size_t c = 0; c < it.calls.size(); ++c) {
      const PortCall& call = it.calls[c];
      int i = slot_of(hz, call.arrive_min, "call arrive");
      int j = slot_of(hz, call.depart_min, "call depart");
      if (j < i) throw PathError("call departs before it arrives on ferry " + std::to_string(f.id));
      for (int t = i; t < j; ++t)
        add_y(ArcKind::WAITING, port_node(call.port, t), port_node(call.port, t + 1));

      if (c + 1 < it.calls.size()) {
        const PortCall& next = it.calls[c + 1];
        bool linked = lc < it.legs.size() && it.legs[lc].from == call.port &&
                      it.legs[lc].depart_min == call.depart_min &&
                      it.legs[lc].to == next.port && it.legs[lc].arrive_min == next.arrive_min;
        if (linked) {
          add_y(ArcKind::SERVICE, port_node(call.port, j),
                port_node(next.port, slot_of(hz, next.arrive_min, "call arrive")));
          ++lc;
        } else {
          if (s.mode != Mode::TWO_SHIFT)
            throw PathError("gap between calls on ferry " + std::to_string(f.id));
          if (gamma_used)
            throw PathError("second crew break on ferry " + std::to_string(f.id));
          add_y(ArcKind::OUT_PORT, port_node(call.port, j), gamma_node(f.id));
          add_y(ArcKind::IN_PORT, gamma_node(f.id),
                port_node(next.port, slot_of(hz, next.arrive_min, "call arrive")));
          gamma_used = true;
        }
      }
    }
    if (lc != it.legs.size())
      throw PathError("unmatched sailing legs on ferry " + std::to_string(f.id));

    const PortCall& last = it.calls.back();
    NodeId last_node = port_node(last.port, slot_of(hz, last.depart_min, "call depart"));
    if (s.mode == Mode::BASIC) {
      if (last.port != f.home_port || last.depart_min != hz.slot_time(q))
        throw PathError("ferry " + std::to_string(f.id) + " does not end at home");
    } else if (s.mode == Mode::HOMEPORT_FREE) {
      add_y(ArcKind::OUT_PORT, last_node, beta_node(f.id));
    } else {
      auto [t1, t2] = *inst.costs.crew_window;
      (void)t1;
      if (last.depart_min > t2) {
        add_y(ArcKind::OUT_PORT, last_node, beta_node(f.id));
      } else {
        if (gamma_used) throw PathError("second crew break on ferry " + std::to_string(f.id));
        add_y(ArcKind::OUT_PORT, last_node, gamma_node(f.id));
        add_y(ArcKind::SHIFT_LINK, gamma_node(f.id), beta_node(f.id));
      }
    }
  }

  // passenger flows by forward propagation over each commodity and port
  std::map<int, std::map<std::pair<int, int>, long long>> sup, dep, arr;
  std::set<int> dests;
  for (const FerryItinerary& it : s.ferries)
    for (const SailingLeg& leg : it.legs)
      for (const auto& [d, amt] : leg.load) {
        if (amt < 0) throw PathError("negative leg load");
        if (amt == 0) continue;
        dep[d][{leg.from, slot_of(hz, leg.depart_min, "leg depart")}] += amt;
        arr[d][{leg.to, slot_of(hz, leg.arrive_min, "leg arrive")}] += amt;
        dests.insert(d);
      }
  for (const Demand& dm : inst.demands)
    if (dm.aeq > 0) {
      sup[dm.to][{dm.from, hz.snap_up(dm.depart_min)}] += dm.aeq;
      dests.insert(dm.to);
    }
  for (const auto& [key, v] : s.stranded) {
    dests.insert(key.first);
    (void)v;
  }

  std::map<std::pair<int, int>, long long> derived_stranded;
  for (int d : dests) {
    for (const Port& p : inst.ports) {
      int k = p.id;
      long long cur = 0;
      for (int i = 1; i <= q; ++i) {
        cur += at(sup[d], k, i) + at(arr[d], k, i) - at(dep[d], k, i);
        if (cur < 0)
          throw PathError("leg boards more than present at " + to_string(port_node(k, i)) +
                          " for destination " + std::to_string(d));
        if (k == d && cur > 0) {
          a[{VarRole::PAX_ARC, d, {ArcKind::DESTINATION, port_node(k, i), zeta_node(d)}}] += cur;
          cur = 0;
        }
        if (i < q && cur > 0)
          a[{VarRole::PAX_ARC, d, {ArcKind::WAITING, port_node(k, i), port_node(k, i + 1)}}] += cur;
      }
      if (k != d && cur > 0) {
        a[{VarRole::PAX_ARC, d, {ArcKind::INFEASIBILITY, port_node(k, q), zeta_node(d)}}] += cur;
        derived_stranded[{d, k}] = cur;
      }
    }
  }
  if (derived_stranded != s.stranded)
    throw PathError("stranded record does not match the legs and demands");

  for (const FerryItinerary& it : s.ferries)
    for (const SailingLeg& leg : it.legs)
      for (const auto& [d, amt] : leg.load)
        if (amt > 0)
          a[{VarRole::PAX_ARC, d,
             {ArcKind::SERVICE, port_node(leg.from, slot_of(hz, leg.depart_min, "leg depart")),
              port_node(leg.to, slot_of(hz, leg.arrive_min, "leg arrive"))}}] += amt;

  return a;
}

ValidationReport validate(const ProblemInstance& inst, const Assignment& a) {
  const Horizon& hz = inst.horizon;
  const int q = hz.q();
  ValidationReport rep;
  for (const char* fam : {"balance", "berth", "capacity", "demand", "domain", "dwell", "transfer"})
    rep.family_pass[fam] = true;
  auto flag = [&](const std::string& fam, const std::string& site, const Rational& mag) {
    rep.violations.push_back({fam, site, mag});
    rep.family_pass[fam] = false;
  };

  std::vector<FerryFlowNetwork> nets;
  for (const Ferry& f : inst.ferries) nets.push_back(build_ferry_network(inst, f.id));
  SupergraphIndex super = build_supergraph(inst, nets);
  std::map<int, long long> dest_total;
  for (const Demand& d : inst.demands)
    if (d.aeq > 0) dest_total[d.to] += d.aeq;
  std::map<int, PassengerNetwork> pax;
  for (const auto& [dest, total] : dest_total)
    pax.emplace(dest, build_passenger_network(inst, super, dest));

  std::map<int, std::set<Arc>> ferry_arcs;
  for (const auto& net : nets) ferry_arcs[net.ferry_id] = {net.arcs.begin(), net.arcs.end()};
  std::map<int, std::set<Arc>> pax_arcs;
  for (const auto& [dest, pn] : pax) pax_arcs[dest] = {pn.arcs.begin(), pn.arcs.end()};

  std::map<int, std::map<Arc, long long>> yv, xv;
  for (const auto& [key, val] : a) {
    if (val == 0) continue;
    if (key.role == VarRole::FERRY_ARC) {
      auto fa = ferry_arcs.find(key.owner);
      if (fa == ferry_arcs.end() || fa->second.count(key.arc) == 0) {
        flag("domain", "unknown ferry arc " + var_name(key), val);
        continue;
      }
      if (val != 1) flag("domain", var_name(key) + " not binary", val);
      yv[key.owner][key.arc] = val;
    } else {
      auto pa = pax_arcs.find(key.owner);
      if (pa == pax_arcs.end() || pa->second.count(key.arc) == 0) {
        flag("domain", "unknown passenger arc " + var_name(key), val);
        continue;
      }
      if (val < 0) flag("domain", var_name(key) + " negative", val);
      xv[key.owner][key.arc] = val;
    }
  }

  for (const auto& net : nets) {
    std::map<NodeId, long long> flow;
    if (auto it = yv.find(net.ferry_id); it != yv.end())
      for (const auto& [arc, v] : it->second) {
        flow[arc.to] += v;
        flow[arc.from] -= v;
      }
    for (const NodeId& v : net.nodes) {
      long long want = v == net.source ? -1 : v == net.sink ? 1 : 0;
      long long got = flow.count(v) ? flow.at(v) : 0;
      if (got != want)
        flag("balance", "ferry " + std::to_string(net.ferry_id) + " at " + to_string(v),
             got - want);
    }
  }
  for (const auto& [dest, pn] : pax) {
    std::map<NodeId, long long> flow;
    if (auto it = xv.find(dest); it != xv.end())
      for (const auto& [arc, v] : it->second) {
        flow[arc.to] += v;
        flow[arc.from] -= v;
      }
    for (const NodeId& v : pn.nodes) {
      long long want = pn.supplies.count(v) ? -pn.supplies.at(v) : 0;
      long long got = flow.count(v) ? flow.at(v) : 0;
      if (got != want)
        flag("balance", "destination " + std::to_string(dest) + " at " + to_string(v),
             got - want);
    }
  }

  std::map<std::pair<int, int>, long long> occupancy;
  for (const auto& [fid, arcs] : yv)
    for (const auto& [arc, v] : arcs)
      if (arc.kind == ArcKind::WAITING) occupancy[{arc.from.id, arc.from.slot}] += v;
  for (const auto& [site, n] : occupancy)
    if (n > inst.port(site.first).berths)
      flag("berth", to_string(port_node(site.first, site.second)),
           n - inst.port(site.first).berths);

  std::map<Arc, long long> load, cap;
  for (const auto& [dest, arcs] : xv)
    for (const auto& [arc, v] : arcs)
      if (arc.kind == ArcKind::SERVICE) load[arc] += v;
  for (const auto& [fid, arcs] : yv)
    for (const auto& [arc, v] : arcs)
      if (arc.kind == ArcKind::SERVICE) cap[arc] += v * inst.ferry(fid).capacity_aeq;
  for (const auto& [arc, l] : load) {
    long long c = cap.count(arc) ? cap.at(arc) : 0;
    if (l > c) flag("capacity", to_string(arc.from) + "->" + to_string(arc.to), l - c);
  }

  for (const auto& [fid, arcs] : yv) {
    const Ferry& f = inst.ferry(fid);
    auto held = [&](int port, int j) {
      auto it = arcs.find({ArcKind::WAITING, port_node(port, j), port_node(port, j + 1)});
      return it != arcs.end() && it->second >= 1;
    };
    for (const auto& [arc, v] : arcs) {
      if (arc.kind != ArcKind::SERVICE || v < 1) continue;
      if (inst.costs.dwell_form == DwellForm::FULL) {
        int w = f.dwell(arc.to.id);
        if (w == 0) continue;
        int missing = 0;
        for (int j = arc.to.slot; j < std::min(arc.to.slot + w, q); ++j)
          if (!held(arc.to.id, j)) ++missing;
        if (missing > 0)
          flag("dwell", "ferry " + std::to_string(fid) + " at " + to_string(arc.to), missing);
      } else {
        int w = f.dwell(arc.from.id);
        int j = arc.from.slot - w;
        if (w == 0 || j < 1) continue;
        if (!held(arc.from.id, j))
          flag("dwell", "ferry " + std::to_string(fid) + " departing " + to_string(arc.from), 1);
      }
    }
  }

  for (const auto& [dest, arcs] : xv) {
    std::map<std::pair<int, int>, long long> arrM, waitM;
    for (const auto& [arc, v] : arcs) {
      if (arc.kind == ArcKind::SERVICE) arrM[{arc.to.id, arc.to.slot}] += v;
      if (arc.kind == ArcKind::WAITING) waitM[{arc.from.id, arc.from.slot}] += v;
    }
    for (const Port& p : inst.ports) {
      int T = p.transfer_slots;
      if (p.id == dest || T == 0) continue;
      for (int i = 1; i < q; ++i) {
        if (inst.costs.transfer_form == TransferForm::SINGLE) {
          long long got = at(arrM, p.id, i), held = at(waitM, p.id, i);
          if (got > held)
            flag("transfer",
                 "destination " + std::to_string(dest) + " at " + to_string(port_node(p.id, i)),
                 got - held);
        } else {
          long long cum = 0;
          for (int t = i; t < std::min(i + T, q); ++t) {
            cum += at(arrM, p.id, t);
            long long held = at(waitM, p.id, t);
            if (cum > held) {
              flag("transfer",
                   "destination " + std::to_string(dest) + " window " +
                       to_string(port_node(p.id, i)) + ".." + std::to_string(t),
                   cum - held);
              break;
            }
          }
        }
      }
    }
  }

  for (const auto& [dest, total] : dest_total) {
    long long delivered = 0, lost = 0;
    if (auto it = xv.find(dest); it != xv.end())
      for (const auto& [arc, v] : it->second) {
        if (arc.kind == ArcKind::DESTINATION) delivered += v;
        if (arc.kind == ArcKind::INFEASIBILITY) lost += v;
      }
    rep.stranded_aeq += lost;
    if (delivered + lost != total)
      flag("demand", "destination " + std::to_string(dest), delivered + lost - total);
  }

  rep.objective = 0;
  for (const auto& [fid, arcs] : yv)
    for (const auto& [arc, v] : arcs)
      rep.objective += inst.costs.lambda * ferry_g(inst, inst.ferry(fid), arc) * v;
  for (const auto& [dest, arcs] : xv)
    for (const auto& [arc, v] : arcs) rep.objective += inst.costs.nu * pax_c(inst, arc) * v;

  rep.pass = rep.violations.empty();
  return rep;
}

Kpis kpis(const ProblemInstance& inst, const Schedule& s, const Assignment& a) {
  const Horizon& hz = inst.horizon;
  Kpis k;
  k.operating_cost = 0;
  for (const FerryItinerary& it : s.ferries) {
    const Ferry& f = inst.ferry(it.ferry);
    for (const SailingLeg& leg : it.legs)
      k.operating_cost += Rational(leg.arrive_min - leg.depart_min) * f.cost_moving_per_min;
    for (const PortCall& call : it.calls) {
      int i = slot_of(hz, call.arrive_min, "call arrive");
      int j = slot_of(hz, call.depart_min, "call depart");
      for (int t = i; t < j; ++t) {
        Arc arc{ArcKind::WAITING, port_node(call.port, t), port_node(call.port, t + 1)};
        k.operating_cost += ferry_g(inst, f, arc);
      }
    }
    if (inst.costs.mode == Mode::TWO_SHIFT)
      k.operating_cost += Rational(int(it.shift1) + int(it.shift2)) * f.shift_salary;
  }
  for (const auto& [key, val] : a) {
    if (key.role != VarRole::PAX_ARC || val <= 0) continue;
    switch (key.arc.kind) {
      case ArcKind::SERVICE:
        k.total_travel_time_aeq_min +=
            val * (node_time(hz, key.arc.to) - node_time(hz, key.arc.from));
        if (key.arc.to.id != key.owner) k.transfers_count += val;
        break;
      case ArcKind::WAITING:
        k.total_travel_time_aeq_min +=
            val * (node_time(hz, key.arc.to) - node_time(hz, key.arc.from));
        break;
      case ArcKind::INFEASIBILITY:
        k.stranded_aeq += val;
        break;
      default:
        break;
    }
  }
  return k;
}

std::string render_schedule(const ProblemInstance& inst, const Schedule& s) {
  std::ostringstream os;
  auto pname = [&](int id) {
    const std::string& n = inst.port(id).name;
    return n.empty() ? "P" + std::to_string(id) : n;
  };
  for (const FerryItinerary& it : s.ferries) {
    const Ferry& f = inst.ferry(it.ferry);
    os << "FERRY " << f.id;
    if (!f.name.empty()) os << " (" << f.name << ")";
    if (inst.costs.mode == Mode::TWO_SHIFT) {
      if (it.shift1 && it.shift2)
        os << "  [shifts 1+2]";
      else if (it.shift1)
        os << "  [shift 1]";
      else if (it.shift2)
        os << "  [shift 2]";
      else
        os << "  [off duty]";
    }
    os << "\n";
    size_t lc = 0;
    for (size_t c = 0; c < it.calls.size(); ++c) {
      const PortCall& call = it.calls[c];
      os << "  CALL " << pname(call.port) << "  " << format_hhmm(call.arrive_min) << " .. "
         << format_hhmm(call.depart_min) << "\n";
      bool linked = c + 1 < it.calls.size() && lc < it.legs.size() &&
                    it.legs[lc].from == call.port &&
                    it.legs[lc].depart_min == call.depart_min;
      if (linked) {
        const SailingLeg& leg = it.legs[lc];
        os << "  SAIL " << pname(leg.from) << " -> " << pname(leg.to) << "  dep "
           << format_hhmm(leg.depart_min) << " arr " << format_hhmm(leg.arrive_min) << "  load "
           << leg.onboard() << " AEQ";
        if (!leg.load.empty()) {
          os << " (";
          bool sep = false;
          for (const auto& [d, v] : leg.load) {
            if (sep) os << ", ";
            os << "to " << pname(d) << ":" << v;
            sep = true;
          }
          os << ")";
        }
        os << "\n";
        ++lc;
      } else if (c + 1 < it.calls.size()) {
        os << "  BREAK (crew change)\n";
      }
    }
    if (it.calls.empty()) os << "  (never enters service)\n";
  }
  for (const auto& [key, v] : s.stranded)
    os << "STRANDED " << v << " AEQ bound for " << pname(key.first) << " at " << pname(key.second)
       << "\n";
  return os.str();
}

}  // namespace ferrysched
