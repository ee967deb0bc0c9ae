#include "ferrysched/ip_model.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ferrysched/errors.hpp"
#include "ferrysched/names.hpp"

namespace ferrysched {

std::string to_string(RowTag t) {
  switch (t) {
    case RowTag::FERRY_BALANCE: return "FERRY_BALANCE";
    case RowTag::BERTH: return "BERTH";
    case RowTag::PAX_BALANCE: return "PAX_BALANCE";
    case RowTag::CAPACITY: return "CAPACITY";
    case RowTag::DWELL: return "DWELL";
    case RowTag::TRANSFER: return "TRANSFER";
  }
  return "?";
}

namespace {

void sort_terms(LinearConstraint& row) {
  std::sort(row.terms.begin(), row.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

int require_var(const IpModel& model, const VarKey& key) {
  int id = model.var_id(key);
  if (id < 0) throw InvariantError("row references unknown variable " + var_name(key));
  return id;
}

void push_var(IpModel& model, VarRole role, int owner, const Arc& arc, VarKind kind,
              const Rational& cost) {
  Variable v;
  v.role = role;
  v.owner = owner;
  v.arc = arc;
  v.kind = kind;
  v.cost = cost;
  v.name = var_name(v.key());
  model.index.emplace(v.key(), static_cast<int>(model.vars.size()));
  model.vars.push_back(std::move(v));
}

Rational ferry_arc_cost(const ProblemInstance& inst, const Ferry& f, const Arc& a) {
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
      return 0;  // OUT_PORT, SHIFT_LINK
  }
}

Rational pax_arc_cost(const ProblemInstance& inst, const Arc& a) {
  switch (a.kind) {
    case ArcKind::SERVICE:
    case ArcKind::WAITING:
      return node_time(inst.horizon, a.to) - node_time(inst.horizon, a.from);
    case ArcKind::INFEASIBILITY:
      return inst.costs.big_m;
    default:
      return 0;  // DESTINATION
  }
}

// per-node incoming/outgoing variable ids of one flow family
struct FlowIncidence {
  std::map<NodeId, std::vector<int>> in, out;
};

template <class ArcList>
FlowIncidence collect_incidence(const IpModel& model, VarRole role, int owner,
                                const ArcList& arcs) {
  FlowIncidence inc;
  for (const Arc& a : arcs) {
    int id = require_var(model, {role, owner, a});
    inc.in[a.to].push_back(id);
    inc.out[a.from].push_back(id);
  }
  return inc;
}

void append_balance_row(IpModel& model, const std::string& name, RowTag tag,
                        const FlowIncidence& inc, const NodeId& v, const Rational& rhs) {
  LinearConstraint row;
  row.name = name;
  row.tag = tag;
  row.sense = RowSense::EQ;
  row.rhs = rhs;
  if (auto it = inc.in.find(v); it != inc.in.end())
    for (int id : it->second) row.terms.emplace_back(id, 1);
  if (auto it = inc.out.find(v); it != inc.out.end())
    for (int id : it->second) row.terms.emplace_back(id, -1);
  sort_terms(row);
  model.rows.push_back(std::move(row));
}

}  // namespace

IpModel build_model(const ProblemInstance& inst, const std::vector<FerryFlowNetwork>& nets,
                    const SupergraphIndex& super, const std::vector<PassengerNetwork>& pax) {
  for (const auto& net : nets)
    if (net.mode != inst.costs.mode) throw ModeError("network mode differs from instance mode");
  if (super.mode != inst.costs.mode) throw ModeError("supergraph mode differs from instance mode");

  IpModel model;
  model.meta.instance_hash = instance_hash(inst);
  model.meta.mode = inst.costs.mode;
  model.meta.n_ports = inst.n_ports();
  model.meta.n_ferries = inst.n_ferries();
  model.meta.q = inst.horizon.q();

  for (const auto& net : nets) {
    const Ferry& f = inst.ferry(net.ferry_id);
    for (const Arc& a : net.arcs)
      push_var(model, VarRole::FERRY_ARC, f.id, a, VarKind::BINARY,
               inst.costs.lambda * ferry_arc_cost(inst, f, a));
  }
  for (const auto& pn : pax)
    for (const Arc& a : pn.arcs)
      push_var(model, VarRole::PAX_ARC, pn.dest_port, a, VarKind::INTEGER,
               inst.costs.nu * pax_arc_cost(inst, a));

  for (const auto& net : nets) {
    FlowIncidence inc = collect_incidence(model, VarRole::FERRY_ARC, net.ferry_id, net.arcs);
    for (const NodeId& v : net.nodes) {
      Rational rhs = v == net.source ? -1 : v == net.sink ? 1 : 0;
      append_balance_row(model, "FB_f" + std::to_string(net.ferry_id) + "_" + node_token(v),
                         RowTag::FERRY_BALANCE, inc, v, rhs);
    }
  }

  for (std::size_t ai = 0; ai < super.arcs.size(); ++ai) {
    const Arc& a = super.arcs[ai];
    if (a.kind != ArcKind::WAITING) continue;
    LinearConstraint row;
    row.name = "BERTH_" + node_token(a.from);
    row.tag = RowTag::BERTH;
    row.sense = RowSense::LE;
    row.rhs = inst.port(a.from.id).berths;
    for (int f : super.ferry_ids[ai]) row.terms.emplace_back(require_var(model, {VarRole::FERRY_ARC, f, a}), 1);
    sort_terms(row);
    model.rows.push_back(std::move(row));
  }

  for (const auto& pn : pax) {
    FlowIncidence inc = collect_incidence(model, VarRole::PAX_ARC, pn.dest_port, pn.arcs);
    for (const NodeId& v : pn.nodes) {
      auto it = pn.supplies.find(v);
      Rational rhs = it == pn.supplies.end() ? 0 : -it->second;
      append_balance_row(model, "PB_d" + std::to_string(pn.dest_port) + "_" + node_token(v),
                         RowTag::PAX_BALANCE, inc, v, rhs);
    }
  }

  for (std::size_t ai = 0; ai < super.arcs.size(); ++ai) {
    const Arc& a = super.arcs[ai];
    if (a.kind != ArcKind::SERVICE) continue;
    LinearConstraint row;
    row.name = "CAP_" + node_token(a.from) + "_" + node_token(a.to);
    row.tag = RowTag::CAPACITY;
    row.sense = RowSense::LE;
    row.rhs = 0;
    for (int f : super.ferry_ids[ai])
      row.terms.emplace_back(require_var(model, {VarRole::FERRY_ARC, f, a}),
                             -Rational(inst.ferry(f).capacity_aeq));
    for (const auto& pn : pax)
      row.terms.emplace_back(require_var(model, {VarRole::PAX_ARC, pn.dest_port, a}), 1);
    sort_terms(row);
    model.rows.push_back(std::move(row));
  }

  add_dwell_constraints(model, inst, nets, inst.costs.dwell_form);
  add_transfer_constraints(model, inst, super, pax, inst.costs.transfer_form);
  return model;
}

IpModel build_model(const ProblemInstance& inst) {
  std::vector<FerryFlowNetwork> nets;
  for (const Ferry& f : inst.ferries) nets.push_back(build_ferry_network(inst, f.id));
  SupergraphIndex super = build_supergraph(inst, nets);
  std::map<int, long long> dest_aeq;
  for (const Demand& d : inst.demands) dest_aeq[d.to] += d.aeq;
  std::vector<PassengerNetwork> pax;
  for (const auto& [dest, vol] : dest_aeq)
    if (vol > 0) pax.push_back(build_passenger_network(inst, super, dest));
  return build_model(inst, nets, super, pax);
}

int add_dwell_constraints(IpModel& model, const ProblemInstance& inst,
                          const std::vector<FerryFlowNetwork>& nets, DwellForm form) {
  if (form == DwellForm::SIMPLIFIED) {
    for (const auto& net : nets)
      for (const Port& p : inst.ports)
        if (!inst.simplified_dwell_ok(net.ferry_id, p.id))
          throw FormError("short dwell form invalid for ferry " + std::to_string(net.ferry_id) +
                          " at port " + std::to_string(p.id));
  }

  const int q = inst.horizon.q();
  int count = 0;
  for (const auto& net : nets) {
    const Ferry& f = inst.ferry(net.ferry_id);
    std::map<NodeId, std::vector<int>> service_in, service_out;
    std::map<std::pair<int, int>, int> waiting;  // (port, slot) -> var id
    for (const Arc& a : net.arcs) {
      int id = require_var(model, {VarRole::FERRY_ARC, net.ferry_id, a});
      if (a.kind == ArcKind::SERVICE) {
        service_in[a.to].push_back(id);
        service_out[a.from].push_back(id);
      } else if (a.kind == ArcKind::WAITING) {
        waiting[{a.from.id, a.from.slot}] = id;
      }
    }

    auto emit = [&](const NodeId& v, LinearConstraint&& row) {
      row.name = "DWELL_f" + std::to_string(net.ferry_id) + "_" + node_token(v);
      row.tag = RowTag::DWELL;
      row.sense = RowSense::LE;
      row.rhs = 0;
      sort_terms(row);
      model.rows.push_back(std::move(row));
      ++count;
    };

    if (form == DwellForm::FULL) {
      for (const auto& [v, ids] : service_in) {
        int w = f.dwell(v.id);
        if (w == 0) continue;
        int r = std::min(v.slot + w, q);
        if (r == v.slot) continue;  // arrival at the last slot, nothing to hold
        LinearConstraint row;
        for (int id : ids) row.terms.emplace_back(id, r - v.slot);
        for (int j = v.slot; j < r; ++j) row.terms.emplace_back(waiting.at({v.id, j}), -1);
        emit(v, std::move(row));
      }
    } else {
      for (const auto& [v, ids] : service_out) {
        int w = f.dwell(v.id);
        if (w == 0) continue;
        int j = v.slot - w;
        if (j < 1) continue;  // no grid history that far back
        LinearConstraint row;
        for (int id : ids) row.terms.emplace_back(id, 1);
        row.terms.emplace_back(waiting.at({v.id, j}), -1);
        emit(v, std::move(row));
      }
    }
  }
  return count;
}

int add_transfer_constraints(IpModel& model, const ProblemInstance& inst,
                             const SupergraphIndex& super,
                             const std::vector<PassengerNetwork>& pax, TransferForm form) {
  if (form == TransferForm::SINGLE) {
    for (const Port& p : inst.ports)
      if (p.transfer_slots >= 2 && p.berths != 1)
        throw FormError("single-row transfer form invalid at port " + std::to_string(p.id));
  }

  const int q = inst.horizon.q();
  // incoming service arcs per grid node, shared by every commodity
  std::map<NodeId, std::vector<Arc>> service_in;
  for (const Arc& a : super.arcs)
    if (a.kind == ArcKind::SERVICE) service_in[a.to].push_back(a);

  int count = 0;
  for (const auto& pn : pax) {
    for (const auto& [anchor, arcs_in] : service_in) {
      int k = anchor.id, i = anchor.slot;
      if (k == pn.dest_port || i == q) continue;
      int T = inst.port(k).transfer_slots;
      if (T == 0) continue;

      auto emit = [&](int t, std::vector<std::pair<int, Rational>>&& terms) {
        LinearConstraint row;
        row.name = "TRANS_d" + std::to_string(pn.dest_port) + "_" + node_token(anchor) + "_" +
                   std::to_string(t);
        row.tag = RowTag::TRANSFER;
        row.sense = RowSense::LE;
        row.rhs = 0;
        row.terms = std::move(terms);
        row.terms.emplace_back(
            require_var(model, {VarRole::PAX_ARC, pn.dest_port,
                          {ArcKind::WAITING, port_node(k, t), port_node(k, t + 1)}}),
            -1);
        sort_terms(row);
        model.rows.push_back(std::move(row));
        ++count;
      };

      if (form == TransferForm::SINGLE) {
        std::vector<std::pair<int, Rational>> terms;
        for (const Arc& a : arcs_in)
          terms.emplace_back(require_var(model, {VarRole::PAX_ARC, pn.dest_port, a}), 1);
        emit(i, std::move(terms));
      } else {
        int r = std::min(i + T, q);
        std::vector<std::pair<int, Rational>> terms;
        for (int t = i; t < r; ++t) {
          if (auto it = service_in.find(port_node(k, t)); it != service_in.end())
            for (const Arc& a : it->second)
              terms.emplace_back(require_var(model, {VarRole::PAX_ARC, pn.dest_port, a}), 1);
          emit(t, std::vector<std::pair<int, Rational>>(terms));
        }
      }
    }
  }
  return count;
}

ModelStats model_stats(const IpModel& model) {
  ModelStats s;
  s.n_vars = static_cast<int>(model.vars.size());
  for (const Variable& v : model.vars)
    (v.kind == VarKind::BINARY ? s.n_binary : s.n_integer) += 1;
  s.n_rows = static_cast<int>(model.rows.size());
  for (const LinearConstraint& row : model.rows) {
    s.nonzeros += static_cast<long long>(row.terms.size());
    s.rows_by_tag[row.tag] += 1;
  }
  return s;
}

std::string serialize_model(const IpModel& model) {
  std::ostringstream out;
  out << "MODEL " << model.meta.instance_hash << " mode=" << to_string(model.meta.mode)
      << " ports=" << model.meta.n_ports << " ferries=" << model.meta.n_ferries
      << " q=" << model.meta.q << " vars=" << model.vars.size() << " rows=" << model.rows.size()
      << "\n";
  for (const Variable& v : model.vars)
    out << "VAR " << v.name << " " << (v.kind == VarKind::BINARY ? "BINARY" : "INTEGER")
        << " cost=" << render_exact(v.cost) << "\n";
  for (const LinearConstraint& row : model.rows) {
    out << "ROW " << row.name << " " << to_string(row.tag) << " "
        << (row.sense == RowSense::LE ? "LE" : row.sense == RowSense::EQ ? "EQ" : "GE")
        << " rhs=" << render_exact(row.rhs);
    for (const auto& [id, coef] : row.terms) out << " " << id << ":" << render_exact(coef);
    out << "\n";
  }
  return out.str();
}

}  // namespace ferrysched
