#include "ferrysched/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>

#include "ferrysched/errors.hpp"
#include "ferrysched/names.hpp"
#include "ferrysched/network.hpp"

namespace ferrysched {

std::string to_string(MipStatus s) {
  switch (s) {
    case MipStatus::OPTIMAL: return "OPTIMAL";
    case MipStatus::FEASIBLE_GAP: return "FEASIBLE_GAP";
    case MipStatus::INFEASIBLE: return "INFEASIBLE";
    case MipStatus::TIMEOUT_NO_INCUMBENT: return "TIMEOUT_NO_INCUMBENT";
  }
  return "?";
}

Rational mip_gap(const Rational& objective, const Rational& bound) {
  if (objective == bound) return 0;
  if (objective == 0) return 1;
  Rational g = (objective - bound) / objective;
  return g < 0 ? Rational(0) : g;
}

Rational assignment_objective(const IpModel& model, const Assignment& a) {
  Rational obj = 0;
  for (const auto& [key, value] : a) {
    int id = model.var_id(key);
    if (id < 0) throw InvariantError("assignment names unknown variable " + var_name(key));
    if (value != 0) obj += model.vars[id].cost * value;
  }
  return obj;
}

std::vector<std::string> model_violations(const IpModel& model, const Assignment& a) {
  std::vector<std::string> out;
  std::vector<long long> x(model.vars.size(), 0);
  for (const auto& [key, value] : a) {
    int id = model.var_id(key);
    if (id < 0) {
      out.push_back("unknown variable " + var_name(key));
      continue;
    }
    x[id] = value;
  }
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    if (x[j] < 0 || (model.vars[j].kind == VarKind::BINARY && x[j] > 1))
      out.push_back("bound " + model.vars[j].name);
  }
  for (const LinearConstraint& row : model.rows) {
    Rational lhs = 0;
    for (const auto& [var, coef] : row.terms)
      if (x[var] != 0) lhs += coef * x[var];
    bool ok = row.sense == RowSense::LE   ? lhs <= row.rhs
              : row.sense == RowSense::EQ ? lhs == row.rhs
                                          : lhs >= row.rhs;
    if (!ok) out.push_back(row.name);
  }
  return out;
}

namespace {

Rational to_rational(const Rational& v) { return v; }
Rational to_rational(double v) { return Rational(v); }

bool near_integer(const Rational& v, Rational& frac_out) {
  Rational fl = rational_floor(v);
  frac_out = v - fl;
  return frac_out == 0;
}

bool near_integer(double v, double& frac_out) {
  frac_out = v - std::floor(v);
  return std::min(frac_out, 1.0 - frac_out) <= 1e-6;
}

long long integral_value(const Rational& v) { return to_int64(v); }
long long integral_value(double v) { return std::llround(v); }

template <class S>
struct BbNode {
  long long id = 0;
  Rational bound;
  std::shared_ptr<const typename SimplexEngine<S>::State> state;  // null: engine holds it
  std::vector<std::tuple<int, bool, long long>> path;             // (var, is_upper, value)
  int branch_var = -1;
  bool branch_up = false;
  Rational parent_obj;
  Rational frac;  // fractional part of the branch variable at the parent
};

struct PseudoCosts {
  std::map<int, std::pair<Rational, long long>> down, up;

  Rational avg(const std::map<int, std::pair<Rational, long long>>& side, int var) const {
    auto it = side.find(var);
    if (it == side.end() || it->second.second == 0) return 1;
    return it->second.first / it->second.second;
  }
  void record(std::map<int, std::pair<Rational, long long>>& side, int var, const Rational& gain) {
    auto& [sum, count] = side[var];
    sum += gain;
    count += 1;
  }
};

template <class S>
MipResult solve_mip_impl(const IpModel& model, const SolverConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  MipResult res;
  const int n = static_cast<int>(model.vars.size());
  LpData<S> data = make_lp_data<S>(model);
  LpBounds<S> root_bounds = make_root_bounds<S>(model);
  SimplexEngine<S> engine(data);

  std::optional<Assignment> incumbent;
  Rational inc_obj;
  if (cfg.warm_start) {
    std::vector<std::string> bad = model_violations(model, *cfg.warm_start);
    if (bad.empty()) {
      incumbent = *cfg.warm_start;
      inc_obj = assignment_objective(model, *cfg.warm_start);
      res.notes.push_back("warm start accepted");
    } else {
      res.notes.push_back("warm start rejected: violates " + bad.front());
    }
  }

  auto record = [&](const Rational& bound) {
    std::optional<Rational> inc_now = incumbent ? std::optional<Rational>(inc_obj) : std::nullopt;
    if (!res.events.empty()) {
      const BoundEvent& last = res.events.back();
      if (last.bound == bound && last.incumbent == inc_now) return;
    }
    res.events.push_back({res.nodes, bound, inc_now});
  };

  std::map<long long, BbNode<S>> open;
  std::set<std::pair<Rational, long long>> by_bound;  // BEST_BOUND order
  std::vector<long long> stack;                       // DFS order
  std::optional<BbNode<S>> plunge;
  long long next_id = 1;
  PseudoCosts pseudo;

  auto open_bound_floor = [&]() -> std::optional<Rational> {
    std::optional<Rational> b;
    if (!by_bound.empty()) b = by_bound.begin()->first;
    for (long long id : stack) {
      const Rational& nb = open.at(id).bound;
      if (!b || nb < *b) b = nb;
    }
    if (plunge && (!b || plunge->bound < *b)) b = plunge->bound;
    return b;
  };

  auto push_node = [&](BbNode<S>&& node) {
    long long id = node.id;
    if (cfg.search == SearchOrder::BEST_BOUND) by_bound.emplace(node.bound, id);
    else stack.push_back(id);
    open.emplace(id, std::move(node));
  };

  auto pop_node = [&]() -> BbNode<S> {
    long long id;
    if (cfg.search == SearchOrder::BEST_BOUND) {
      id = by_bound.begin()->second;
      by_bound.erase(by_bound.begin());
    } else {
      id = stack.back();
      stack.pop_back();
    }
    auto it = open.find(id);
    BbNode<S> node = std::move(it->second);
    open.erase(it);
    return node;
  };

  LpBounds<S> work = root_bounds;
  auto apply_path = [&](const BbNode<S>& node) {
    work = root_bounds;
    for (const auto& [var, is_upper, value] : node.path) {
      if (is_upper) {
        work.has_up[var] = 1;
        work.up[var] = S(value);
      } else {
        work.has_lo[var] = 1;
        work.lo[var] = S(value);
      }
    }
  };

  bool limit_hit = false;
  BbNode<S> root;
  root.id = 0;
  root.bound = 0;
  plunge = std::move(root);

  while (plunge || !open.empty() || !stack.empty()) {
    if (cfg.time_limit_s && elapsed() >= *cfg.time_limit_s) { limit_hit = true; break; }
    if (cfg.node_limit && res.nodes >= *cfg.node_limit) { limit_hit = true; break; }

    BbNode<S> node;
    if (plunge) {
      node = std::move(*plunge);
      plunge.reset();
    } else {
      node = pop_node();
    }
    if (incumbent && node.bound >= inc_obj) continue;

    if (node.state) engine.load(*node.state);
    apply_path(node);
    LpStatus st = engine.solve(work, 4000000);
    res.nodes += 1;
    if (st == LpStatus::ITER_LIMIT) throw NumericalError("relaxation iteration limit reached");

    if (st == LpStatus::OPTIMAL) {
      Rational obj = to_rational(engine.objective());
      if (obj < node.bound) obj = node.bound;  // float wobble guard; bounds only tighten
      node.bound = obj;

      if (node.branch_var >= 0) {
        Rational gain = obj - node.parent_obj;
        if (gain < 0) gain = 0;
        Rational denom = node.branch_up ? Rational(1) - node.frac : node.frac;
        if (denom > 0)
          pseudo.record(node.branch_up ? pseudo.up : pseudo.down, node.branch_var, gain / denom);
      }

      if (!incumbent || obj < inc_obj) {
        std::vector<S> vals = engine.values();

        int pick = -1;
        Rational pick_score = -1;
        bool pick_is_y = false;
        std::vector<std::pair<int, Rational>> fractional;  // (var, frac part)
        for (int j = 0; j < n; ++j) {
          S fr{};
          if (near_integer(vals[j], fr)) continue;
          fractional.emplace_back(j, to_rational(fr));
        }

        if (fractional.empty()) {
          Assignment cand;
          for (int j = 0; j < n; ++j) {
            long long v = integral_value(vals[j]);
            if (v != 0) cand.emplace(model.vars[j].key(), v);
          }
          std::vector<std::string> bad = model_violations(model, cand);
          if (bad.empty()) {
            Rational cand_obj = assignment_objective(model, cand);
            if (!incumbent || cand_obj < inc_obj) {
              incumbent = std::move(cand);
              inc_obj = cand_obj;
            }
          } else {
            res.notes.push_back("rounded relaxation point rejected: violates " + bad.front());
          }
        } else {
          for (const auto& [j, fr] : fractional) {
            Rational dist = fr <= Rational(1, 2) ? fr : Rational(1) - fr;
            bool is_y = model.vars[j].role == VarRole::FERRY_ARC;
            Rational score;
            if (cfg.branch_rule == BranchRule::MOST_FRACTIONAL_Y_FIRST) {
              // any fractional ferry variable outranks every passenger variable
              score = dist;
              if (pick >= 0 && pick_is_y && !is_y) continue;
              if (pick >= 0 && pick_is_y == is_y && score <= pick_score) continue;
            } else {
              score = pseudo.avg(pseudo.down, j) * fr * (pseudo.avg(pseudo.up, j) * (Rational(1) - fr));
              if (pick >= 0 && score <= pick_score) continue;
            }
            pick = j;
            pick_score = score;
            pick_is_y = is_y;
          }

          Rational v = to_rational(vals[pick]);
          Rational fl = rational_floor(v);
          long long down_val = to_int64(fl);
          Rational frac = v - fl;

          BbNode<S> down, up;
          down.id = next_id++;
          up.id = next_id++;
          down.bound = up.bound = obj;
          down.path = node.path;
          up.path = std::move(node.path);
          down.path.emplace_back(pick, true, down_val);
          up.path.emplace_back(pick, false, down_val + 1);
          down.branch_var = up.branch_var = pick;
          down.branch_up = false;
          up.branch_up = true;
          down.parent_obj = up.parent_obj = obj;
          down.frac = up.frac = frac;

          up.state = std::make_shared<const typename SimplexEngine<S>::State>(engine.save());
          push_node(std::move(up));
          plunge = std::move(down);  // engine already holds the parent basis
        }
      }
    }
    // INFEASIBLE nodes and bound-pruned nodes just fall through

    auto fl = open_bound_floor();
    if (incumbent) {
      Rational gb = fl && *fl < inc_obj ? *fl : inc_obj;
      record(gb);
      if (mip_gap(inc_obj, gb) <= cfg.gap_tol) break;
    } else if (fl) {
      record(*fl);
    }
  }

  res.wall_time_s = elapsed();
  bool exhausted = !plunge && open.empty() && stack.empty() && !limit_hit;
  if (incumbent) {
    auto fl = open_bound_floor();
    res.bound = exhausted || !fl || *fl > inc_obj ? inc_obj : *fl;
    res.incumbent = std::move(incumbent);
    res.objective = inc_obj;
    res.gap = mip_gap(inc_obj, res.bound);
    res.status = res.gap <= cfg.gap_tol ? MipStatus::OPTIMAL : MipStatus::FEASIBLE_GAP;
    record(res.bound);
  } else if (exhausted) {
    res.status = MipStatus::INFEASIBLE;
    res.bound = 0;
    res.gap = 0;
  } else {
    res.status = MipStatus::TIMEOUT_NO_INCUMBENT;
    auto fl = open_bound_floor();
    res.bound = fl ? *fl : Rational(0);
    res.gap = 1;
  }
  return res;
}

}  // namespace

LpSolution solve_lp(const IpModel& model) {
  LpData<Rational> data = make_lp_data<Rational>(model);
  LpBounds<Rational> bounds = make_root_bounds<Rational>(model);
  SimplexEngine<Rational> engine(data);
  LpStatus st = engine.solve(bounds, 4000000);
  if (st == LpStatus::ITER_LIMIT) throw NumericalError("relaxation iteration limit reached");
  LpSolution sol;
  sol.status = st;
  if (st == LpStatus::OPTIMAL) {
    sol.objective = engine.objective();
    std::vector<Rational> all = engine.values();
    sol.values.assign(all.begin(), all.begin() + model.vars.size());
  }
  return sol;
}

LpSolution solve_lp_float(const IpModel& model) {
  LpData<double> data = make_lp_data<double>(model);
  LpBounds<double> bounds = make_root_bounds<double>(model);
  SimplexEngine<double> engine(data);
  LpStatus st = engine.solve(bounds, 4000000);
  if (st == LpStatus::ITER_LIMIT) throw NumericalError("relaxation iteration limit reached");
  LpSolution sol;
  sol.status = st;
  if (st != LpStatus::OPTIMAL) return sol;

  // rebuild the final basis exactly and re-derive the point it denotes
  auto state = engine.save();
  const int n = static_cast<int>(model.vars.size());
  const int m = static_cast<int>(model.rows.size());
  LpBounds<Rational> rb = make_root_bounds<Rational>(model);
  LpData<Rational> rd = make_lp_data<Rational>(model);

  std::vector<Rational> x(n + m, 0);
  for (int j = 0; j < n + m; ++j) {
    if (state.status[j] == 1) x[j] = rb.has_lo[j] ? rb.lo[j] : Rational(0);
    else if (state.status[j] == 2) x[j] = rb.has_up[j] ? rb.up[j] : Rational(0);
  }
  std::vector<Rational> t = rd.rhs;
  for (int j = 0; j < n + m; ++j) {
    if (state.status[j] == 0 || x[j] == 0) continue;
    if (j < n) {
      for (const auto& [row, coef] : rd.cols[j]) t[row] -= coef * x[j];
    } else {
      t[j - n] -= x[j];
    }
  }
  // dense exact solve of B * xb = t
  std::vector<std::vector<Rational>> B(m, std::vector<Rational>(m, 0));
  for (int i = 0; i < m; ++i) {
    int col = state.basic[i];
    if (col < n) {
      for (const auto& [row, coef] : rd.cols[col]) B[row][i] = coef;
    } else {
      B[col - n][i] = 1;
    }
  }
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int c = 0; c < m; ++c) {
    int pr = -1;
    for (int r = c; r < m; ++r)
      if (B[perm[r]][c] != 0) { pr = r; break; }
    if (pr < 0) throw NumericalError("basis from float run is singular");
    std::swap(perm[c], perm[pr]);
    for (int r = c + 1; r < m; ++r) {
      Rational f = B[perm[r]][c] / B[perm[c]][c];
      if (f == 0) continue;
      B[perm[r]][c] = f;  // keep the multiplier for the rhs pass
      for (int k = c + 1; k < m; ++k) B[perm[r]][k] -= f * B[perm[c]][k];
    }
  }
  std::vector<Rational> y(m);
  for (int c = 0; c < m; ++c) {
    Rational acc = t[perm[c]];
    for (int k = 0; k < c; ++k) acc -= B[perm[c]][k] * y[k];
    y[c] = acc;
  }
  std::vector<Rational> xb(m);
  for (int c = m - 1; c >= 0; --c) {
    Rational acc = y[c];
    for (int k = c + 1; k < m; ++k) acc -= B[perm[c]][k] * xb[k];
    xb[c] = acc / B[perm[c]][c];
  }
  for (int i = 0; i < m; ++i) x[state.basic[i]] = xb[i];

  Rational tol(1, 10000000);
  for (int j = 0; j < n + m; ++j) {
    if (rb.has_lo[j] && x[j] < rb.lo[j] - tol)
      throw NumericalError("refined point violates a lower bound beyond tolerance");
    if (rb.has_up[j] && x[j] > rb.up[j] + tol)
      throw NumericalError("refined point violates an upper bound beyond tolerance");
  }
  sol.objective = 0;
  for (int j = 0; j < n; ++j)
    if (x[j] != 0) sol.objective += model.vars[j].cost * x[j];
  sol.values.assign(x.begin(), x.begin() + n);
  return sol;
}

MipResult solve_mip(const IpModel& model, const SolverConfig& config) {
  if (config.float_mode) return solve_mip_impl<double>(model, config);
  return solve_mip_impl<Rational>(model, config);
}

Assignment make_idle_assignment(const ProblemInstance& inst, const IpModel& model) {
  const int q = inst.horizon.q();
  Assignment a;
  auto add = [&](VarRole role, int owner, ArcKind kind, NodeId from, NodeId to, long long v) {
    VarKey key{role, owner, Arc{kind, from, to}};
    if (model.var_id(key) < 0)
      throw InvariantError("idle assignment needs missing variable " + var_name(key));
    a[key] += v;
  };

  for (const Ferry& f : inst.ferries) {
    int h = f.home_port;
    switch (inst.costs.mode) {
      case Mode::BASIC:
        for (int i = 1; i < q; ++i)
          add(VarRole::FERRY_ARC, f.id, ArcKind::WAITING, port_node(h, i), port_node(h, i + 1), 1);
        break;
      case Mode::HOMEPORT_FREE:
        if (q >= 3) {
          add(VarRole::FERRY_ARC, f.id, ArcKind::IN_PORT, alpha_node(f.id), port_node(h, 2), 1);
          add(VarRole::FERRY_ARC, f.id, ArcKind::OUT_PORT, port_node(h, 2), beta_node(f.id), 1);
        } else {
          add(VarRole::FERRY_ARC, f.id, ArcKind::IN_PORT, alpha_node(f.id), port_node(h, 1), 1);
          add(VarRole::FERRY_ARC, f.id, ArcKind::WAITING, port_node(h, 1), port_node(h, 2), 1);
          add(VarRole::FERRY_ARC, f.id, ArcKind::OUT_PORT, port_node(h, 2), beta_node(f.id), 1);
        }
        break;
      case Mode::TWO_SHIFT:
        add(VarRole::FERRY_ARC, f.id, ArcKind::SHIFT_LINK, alpha_node(f.id), gamma_node(f.id), 1);
        add(VarRole::FERRY_ARC, f.id, ArcKind::SHIFT_LINK, gamma_node(f.id), beta_node(f.id), 1);
        break;
    }
  }

  for (const Demand& d : inst.demands) {
    int i = inst.horizon.snap_up(d.depart_min);
    for (int j = i; j < q; ++j)
      add(VarRole::PAX_ARC, d.to, ArcKind::WAITING, port_node(d.from, j), port_node(d.from, j + 1),
          d.aeq);
    add(VarRole::PAX_ARC, d.to, ArcKind::INFEASIBILITY, port_node(d.from, q), zeta_node(d.to),
        d.aeq);
  }
  return a;
}

}  // namespace ferrysched
