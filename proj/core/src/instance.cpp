#include "ferrysched/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ferrysched/errors.hpp"
#include "ferrysched/timeutil.hpp"

namespace ferrysched {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
}

void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  require_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw SchemaError(path + "." + it.key() + ": unknown key");
  }
}

const json& require_field(const json& j, const std::string& path, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key + ": missing");
  return *it;
}

long long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
  return j.get<long long>();
}

// times are integer minutes or "HH:MM" strings
int get_time(const json& j, const std::string& path) {
  if (j.is_number_integer()) return static_cast<int>(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_hhmm(j.get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(path + ": " + e.what());
    }
  }
  throw SchemaError(path + ": expected minutes or a HH:MM string");
}

// money and weights: integer, float, or an exact "p/q" / decimal string
Rational get_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return Rational(j.get<double>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(path + ": " + e.what());
    }
  }
  throw SchemaError(path + ": expected a number");
}

int parse_port_key(const std::string& key, const std::string& path) {
  for (char c : key)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw SchemaError(path + "['" + key + "']: expected a port id");
  if (key.empty()) throw SchemaError(path + "['']: expected a port id");
  return std::stoi(key);
}

Mode parse_mode(const std::string& s, const std::string& path) {
  if (s == "BASIC") return Mode::BASIC;
  if (s == "HOMEPORT_FREE") return Mode::HOMEPORT_FREE;
  if (s == "TWO_SHIFT") return Mode::TWO_SHIFT;
  throw SchemaError(path + ": unknown mode '" + s + "'");
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::BASIC: return "BASIC";
    case Mode::HOMEPORT_FREE: return "HOMEPORT_FREE";
    case Mode::TWO_SHIFT: return "TWO_SHIFT";
  }
  return "?";
}

std::string to_string(DwellForm f) { return f == DwellForm::FULL ? "FULL" : "SIMPLIFIED"; }
std::string to_string(TransferForm f) { return f == TransferForm::FULL ? "FULL" : "SINGLE"; }

long long ProblemInstance::total_demand_aeq() const {
  long long total = 0;
  for (const Demand& d : demands) total += d.aeq;
  return total;
}

bool ProblemInstance::simplified_dwell_ok(int f, int k) const {
  const Ferry& fer = ferry(f);
  int w = fer.dwell(k);
  if (w == 0) return true;
  for (const auto& [route, minutes] : fer.travel_min) {
    if (route.first == k && w * horizon.delta_min >= minutes) return false;
  }
  return true;
}

ProblemInstance load_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid document: ") + e.what());
  }
  require_keys(doc, "$", {"horizon", "ports", "ferries", "demands", "costs"});

  ProblemInstance inst;

  const json& jh = require_field(doc, "$", "horizon");
  require_keys(jh, "horizon", {"start", "end", "delta"});
  inst.horizon.start_min = get_time(require_field(jh, "horizon", "start"), "horizon.start");
  inst.horizon.end_min = get_time(require_field(jh, "horizon", "end"), "horizon.end");
  inst.horizon.delta_min = static_cast<int>(get_int(require_field(jh, "horizon", "delta"), "horizon.delta"));
  if (inst.horizon.delta_min <= 0) throw SchemaError("horizon.delta: must be positive");
  if (inst.horizon.end_min <= inst.horizon.start_min)
    throw SchemaError("horizon.end: must be after horizon.start");
  if ((inst.horizon.end_min - inst.horizon.start_min) % inst.horizon.delta_min != 0)
    throw InvariantError("horizon: length is not a multiple of delta");
  if (inst.horizon.q() < 2) throw InvariantError("horizon: needs at least two slots");

  const json& jports = require_field(doc, "$", "ports");
  if (!jports.is_array() || jports.empty()) throw SchemaError("ports: expected a non-empty array");
  inst.ports.resize(jports.size());
  std::vector<bool> seen_port(jports.size() + 1, false);
  for (std::size_t idx = 0; idx < jports.size(); ++idx) {
    std::string path = "ports[" + std::to_string(idx) + "]";
    const json& jp = jports[idx];
    require_keys(jp, path, {"id", "name", "berths", "transfer_slots"});
    Port p;
    p.id = static_cast<int>(get_int(require_field(jp, path, "id"), path + ".id"));
    if (p.id < 1 || p.id > static_cast<int>(jports.size()) || seen_port[p.id])
      throw SchemaError(path + ".id: port ids must be exactly 1.." + std::to_string(jports.size()));
    seen_port[p.id] = true;
    p.name = jp.contains("name") ? jp["name"].get<std::string>() : "P" + std::to_string(p.id);
    p.berths = static_cast<int>(get_int(require_field(jp, path, "berths"), path + ".berths"));
    if (p.berths < 1) throw SchemaError(path + ".berths: must be at least 1");
    if (jp.contains("transfer_slots")) {
      p.transfer_slots = static_cast<int>(get_int(jp["transfer_slots"], path + ".transfer_slots"));
      if (p.transfer_slots < 0) throw SchemaError(path + ".transfer_slots: must be non-negative");
    }
    inst.ports[p.id - 1] = p;
  }
  int n = inst.n_ports();

  const json& jferries = require_field(doc, "$", "ferries");
  if (!jferries.is_array() || jferries.empty()) throw SchemaError("ferries: expected a non-empty array");
  inst.ferries.resize(jferries.size());
  std::vector<bool> seen_ferry(jferries.size() + 1, false);
  for (std::size_t idx = 0; idx < jferries.size(); ++idx) {
    std::string path = "ferries[" + std::to_string(idx) + "]";
    const json& jf = jferries[idx];
    require_keys(jf, path, {"id", "name", "capacity", "home", "cost_moving_per_hour",
                            "cost_docked_per_hour", "shift_salary", "dwell", "travel"});
    Ferry f;
    f.id = static_cast<int>(get_int(require_field(jf, path, "id"), path + ".id"));
    if (f.id < 1 || f.id > static_cast<int>(jferries.size()) || seen_ferry[f.id])
      throw SchemaError(path + ".id: ferry ids must be exactly 1.." + std::to_string(jferries.size()));
    seen_ferry[f.id] = true;
    f.name = jf.contains("name") ? jf["name"].get<std::string>() : "F" + std::to_string(f.id);
    f.capacity_aeq = static_cast<int>(get_int(require_field(jf, path, "capacity"), path + ".capacity"));
    if (f.capacity_aeq < 1) throw SchemaError(path + ".capacity: must be at least 1");
    f.home_port = static_cast<int>(get_int(require_field(jf, path, "home"), path + ".home"));
    if (f.home_port < 1 || f.home_port > n) throw SchemaError(path + ".home: no such port");
    // rates arrive per hour and are kept per minute, exactly
    f.cost_moving_per_min =
        get_rational(require_field(jf, path, "cost_moving_per_hour"), path + ".cost_moving_per_hour") / 60;
    f.cost_docked_per_min =
        get_rational(require_field(jf, path, "cost_docked_per_hour"), path + ".cost_docked_per_hour") / 60;
    if (f.cost_moving_per_min < 0) throw SchemaError(path + ".cost_moving_per_hour: must be non-negative");
    if (f.cost_docked_per_min < 0) throw SchemaError(path + ".cost_docked_per_hour: must be non-negative");
    if (jf.contains("shift_salary")) {
      f.shift_salary = get_rational(jf["shift_salary"], path + ".shift_salary");
      if (f.shift_salary < 0) throw SchemaError(path + ".shift_salary: must be non-negative");
    }
    if (jf.contains("dwell")) {
      require_object(jf["dwell"], path + ".dwell");
      for (auto it = jf["dwell"].begin(); it != jf["dwell"].end(); ++it) {
        int k = parse_port_key(it.key(), path + ".dwell");
        if (k < 1 || k > n) throw SchemaError(path + ".dwell['" + it.key() + "']: no such port");
        int w = static_cast<int>(get_int(it.value(), path + ".dwell['" + it.key() + "']"));
        if (w < 0) throw SchemaError(path + ".dwell['" + it.key() + "']: must be non-negative");
        if (w > 0) f.dwell_slots[k] = w;
      }
    }
    const json& jt = require_field(jf, path, "travel");
    require_object(jt, path + ".travel");
    for (auto it = jt.begin(); it != jt.end(); ++it) {
      std::string key = it.key();
      std::string epath = path + ".travel['" + key + "']";
      std::size_t dash = key.find('-');
      if (dash == std::string::npos) throw SchemaError(epath + ": expected a 'from-to' key");
      int from = parse_port_key(key.substr(0, dash), path + ".travel");
      int to = parse_port_key(key.substr(dash + 1), path + ".travel");
      if (from < 1 || from > n || to < 1 || to > n) throw SchemaError(epath + ": no such port");
      if (from == to) throw SchemaError(epath + ": a route cannot loop");
      int minutes = static_cast<int>(get_int(it.value(), epath));
      if (minutes < 1) throw SchemaError(epath + ": must be positive minutes");
      f.travel_min[{from, to}] = minutes;
    }
    inst.ferries[f.id - 1] = f;
  }

  if (doc.contains("demands")) {
    const json& jdemands = doc["demands"];
    if (!jdemands.is_array()) throw SchemaError("demands: expected an array");
    for (std::size_t idx = 0; idx < jdemands.size(); ++idx) {
      std::string path = "demands[" + std::to_string(idx) + "]";
      const json& jd = jdemands[idx];
      require_keys(jd, path, {"from", "to", "time", "aeq"});
      Demand d;
      d.from = static_cast<int>(get_int(require_field(jd, path, "from"), path + ".from"));
      d.to = static_cast<int>(get_int(require_field(jd, path, "to"), path + ".to"));
      if (d.from < 1 || d.from > n) throw SchemaError(path + ".from: no such port");
      if (d.to < 1 || d.to > n) throw SchemaError(path + ".to: no such port");
      if (d.from == d.to) throw SchemaError(path + ".to: origin and destination coincide");
      d.depart_min = get_time(require_field(jd, path, "time"), path + ".time");
      if (d.depart_min < inst.horizon.start_min || d.depart_min > inst.horizon.end_min)
        throw InvariantError(path + ".time: outside the horizon");
      d.aeq = static_cast<int>(get_int(require_field(jd, path, "aeq"), path + ".aeq"));
      if (d.aeq < 1) throw SchemaError(path + ".aeq: must be at least 1");
      inst.demands.push_back(d);
    }
  }

  inst.costs.big_m = Rational(10) * (inst.horizon.end_min - inst.horizon.start_min);
  if (doc.contains("costs")) {
    const json& jc = doc["costs"];
    require_keys(jc, "costs", {"lambda", "nu", "big_m", "mode", "dwell_form", "transfer_form", "crew_window"});
    if (jc.contains("lambda")) inst.costs.lambda = get_rational(jc["lambda"], "costs.lambda");
    if (jc.contains("nu")) inst.costs.nu = get_rational(jc["nu"], "costs.nu");
    if (inst.costs.lambda < 0 || inst.costs.nu < 0)
      throw SchemaError("costs: weights must be non-negative");
    if (jc.contains("big_m")) inst.costs.big_m = get_rational(jc["big_m"], "costs.big_m");
    if (jc.contains("mode")) {
      if (!jc["mode"].is_string()) throw SchemaError("costs.mode: expected a string");
      inst.costs.mode = parse_mode(jc["mode"].get<std::string>(), "costs.mode");
    }
    if (jc.contains("dwell_form")) {
      std::string s = jc["dwell_form"].get<std::string>();
      if (s == "FULL") inst.costs.dwell_form = DwellForm::FULL;
      else if (s == "SIMPLIFIED") inst.costs.dwell_form = DwellForm::SIMPLIFIED;
      else throw SchemaError("costs.dwell_form: unknown form '" + s + "'");
    }
    if (jc.contains("transfer_form")) {
      std::string s = jc["transfer_form"].get<std::string>();
      if (s == "FULL") inst.costs.transfer_form = TransferForm::FULL;
      else if (s == "SINGLE") inst.costs.transfer_form = TransferForm::SINGLE;
      else throw SchemaError("costs.transfer_form: unknown form '" + s + "'");
    }
    if (jc.contains("crew_window")) {
      const json& jw = jc["crew_window"];
      if (!jw.is_array() || jw.size() != 2) throw SchemaError("costs.crew_window: expected [t1,t2]");
      int t1 = get_time(jw[0], "costs.crew_window[0]");
      int t2 = get_time(jw[1], "costs.crew_window[1]");
      inst.costs.crew_window = {t1, t2};
    }
  }
  if (inst.costs.big_m <= inst.horizon.end_min - inst.horizon.start_min)
    throw InvariantError("costs.big_m: must exceed the horizon length");
  if (inst.costs.mode == Mode::TWO_SHIFT) {
    if (!inst.costs.crew_window) throw InvariantError("costs.crew_window: required in TWO_SHIFT mode");
    auto [t1, t2] = *inst.costs.crew_window;
    if (!(inst.horizon.start_min < t1 && t1 < t2 && t2 < inst.horizon.end_min))
      throw InvariantError("costs.crew_window: need start < t1 < t2 < end");
  } else if (inst.costs.crew_window) {
    throw InvariantError("costs.crew_window: only meaningful in TWO_SHIFT mode");
  }

  // a port advertised for transfers must give every ferry time to unload there
  for (const Port& p : inst.ports) {
    if (p.transfer_slots == 0) continue;
    for (const Ferry& f : inst.ferries) {
      if (p.transfer_slots > f.dwell(p.id))
        throw InvariantError("ports[" + std::to_string(p.id - 1) + "].transfer_slots: exceeds the dwell of ferry " +
                             std::to_string(f.id) + " at port " + std::to_string(p.id));
    }
  }

  // non-fatal findings
  std::vector<std::vector<int>> adj(n + 1);
  for (const Ferry& f : inst.ferries)
    for (const auto& [route, minutes] : f.travel_min) adj[route.first].push_back(route.second);
  for (std::size_t idx = 0; idx < inst.demands.size(); ++idx) {
    const Demand& d = inst.demands[idx];
    std::vector<bool> reached(n + 1, false);
    std::vector<int> stack{d.from};
    reached[d.from] = true;
    while (!stack.empty()) {
      int k = stack.back();
      stack.pop_back();
      for (int h : adj[k])
        if (!reached[h]) {
          reached[h] = true;
          stack.push_back(h);
        }
    }
    if (!reached[d.to])
      inst.warnings.push_back("demands[" + std::to_string(idx) + "]: no route serves " +
                              std::to_string(d.from) + " -> " + std::to_string(d.to) +
                              "; it can only strand");
    if (d.depart_min > inst.horizon.slot_time(inst.horizon.q()))
      inst.warnings.push_back("demands[" + std::to_string(idx) + "]: departs after the last slot" +
                              "; it can only strand");
  }

  return inst;
}

ProblemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str());
}

namespace {

ordered_json rational_json(const Rational& r) {
  if (is_integral(r)) return ordered_json(to_int64(r));
  return ordered_json(render_exact(r));
}

}  // namespace

std::string save_instance(const ProblemInstance& inst) {
  ordered_json doc;
  doc["horizon"] = {{"start", inst.horizon.start_min},
                    {"end", inst.horizon.end_min},
                    {"delta", inst.horizon.delta_min}};
  doc["ports"] = ordered_json::array();
  for (const Port& p : inst.ports) {
    ordered_json jp;
    jp["id"] = p.id;
    jp["name"] = p.name;
    jp["berths"] = p.berths;
    jp["transfer_slots"] = p.transfer_slots;
    doc["ports"].push_back(jp);
  }
  doc["ferries"] = ordered_json::array();
  for (const Ferry& f : inst.ferries) {
    ordered_json jf;
    jf["id"] = f.id;
    jf["name"] = f.name;
    jf["capacity"] = f.capacity_aeq;
    jf["home"] = f.home_port;
    jf["cost_moving_per_hour"] = rational_json(f.cost_moving_per_min * 60);
    jf["cost_docked_per_hour"] = rational_json(f.cost_docked_per_min * 60);
    jf["shift_salary"] = rational_json(f.shift_salary);
    ordered_json jd = ordered_json::object();
    for (const auto& [port, w] : f.dwell_slots) jd[std::to_string(port)] = w;
    jf["dwell"] = jd;
    ordered_json jt = ordered_json::object();
    for (const auto& [route, minutes] : f.travel_min)
      jt[std::to_string(route.first) + "-" + std::to_string(route.second)] = minutes;
    jf["travel"] = jt;
    doc["ferries"].push_back(jf);
  }
  doc["demands"] = ordered_json::array();
  for (const Demand& d : inst.demands) {
    ordered_json jd;
    jd["from"] = d.from;
    jd["to"] = d.to;
    jd["time"] = d.depart_min;
    jd["aeq"] = d.aeq;
    doc["demands"].push_back(jd);
  }
  ordered_json jc;
  jc["lambda"] = rational_json(inst.costs.lambda);
  jc["nu"] = rational_json(inst.costs.nu);
  jc["big_m"] = rational_json(inst.costs.big_m);
  jc["mode"] = to_string(inst.costs.mode);
  jc["dwell_form"] = to_string(inst.costs.dwell_form);
  jc["transfer_form"] = to_string(inst.costs.transfer_form);
  if (inst.costs.crew_window)
    jc["crew_window"] = {inst.costs.crew_window->first, inst.costs.crew_window->second};
  doc["costs"] = jc;
  return doc.dump(2) + "\n";
}

std::string instance_hash(const ProblemInstance& inst) {
  return hex64(fnv1a64(save_instance(inst)));
}

}  // namespace ferrysched
