#ifndef FERRYSCHED_IP_MODEL_HPP
#define FERRYSCHED_IP_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ferrysched/network.hpp"

namespace ferrysched {

enum class VarRole { FERRY_ARC, PAX_ARC };
enum class VarKind { BINARY, INTEGER };

// structural identity of a variable, stable across rebuilds of the same instance
struct VarKey {
  VarRole role = VarRole::FERRY_ARC;
  int owner = 0;  // ferry id, or destination port for passenger flow
  Arc arc;

  auto operator<=>(const VarKey&) const = default;
};

struct Variable {
  std::string name;
  VarRole role = VarRole::FERRY_ARC;
  int owner = 0;
  Arc arc;
  VarKind kind = VarKind::BINARY;
  Rational cost;  // objective coefficient, weights folded in

  VarKey key() const { return {role, owner, arc}; }
  Rational lower() const { return 0; }
  std::optional<Rational> upper() const {
    return kind == VarKind::BINARY ? std::optional<Rational>(1) : std::nullopt;
  }
};

enum class RowSense { LE, EQ, GE };
enum class RowTag { FERRY_BALANCE, BERTH, PAX_BALANCE, CAPACITY, DWELL, TRANSFER };

std::string to_string(RowTag t);

struct LinearConstraint {
  std::string name;
  RowTag tag = RowTag::FERRY_BALANCE;
  RowSense sense = RowSense::EQ;
  Rational rhs;
  std::vector<std::pair<int, Rational>> terms;  // by variable id, ascending, no zeros
};

struct ModelMeta {
  std::string instance_hash;
  Mode mode = Mode::BASIC;
  int n_ports = 0;
  int n_ferries = 0;
  int q = 0;
};

struct IpModel {
  ModelMeta meta;
  std::vector<Variable> vars;
  std::vector<LinearConstraint> rows;
  std::map<VarKey, int> index;

  int var_id(const VarKey& key) const {
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
  }
};

struct ModelStats {
  int n_vars = 0;
  int n_binary = 0;
  int n_integer = 0;
  int n_rows = 0;
  long long nonzeros = 0;
  std::map<RowTag, int> rows_by_tag;
};

// Assemble the full model: variables with costs, then rows in the fixed family
// order (ferry balance, berth, passenger balance, capacity, dwell, transfer).
// Passenger networks are built only for destinations with positive demand.
// Balance rows read (inflow - outflow); ferry supplies are -1 at the source and
// +1 at the sink, passenger supplies -volume at snapped origins and +total at
// the destination sink.
IpModel build_model(const ProblemInstance& inst);
IpModel build_model(const ProblemInstance& inst, const std::vector<FerryFlowNetwork>& nets,
                    const SupergraphIndex& super, const std::vector<PassengerNetwork>& pax);

// both return the number of rows appended
int add_dwell_constraints(IpModel& model, const ProblemInstance& inst,
                          const std::vector<FerryFlowNetwork>& nets, DwellForm form);
int add_transfer_constraints(IpModel& model, const ProblemInstance& inst,
                             const SupergraphIndex& super,
                             const std::vector<PassengerNetwork>& pax, TransferForm form);

ModelStats model_stats(const IpModel& model);

// deterministic plain-text form; identical instances serialize identically
std::string serialize_model(const IpModel& model);

}  // namespace ferrysched

#endif
