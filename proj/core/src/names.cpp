#include "ferrysched/names.hpp"

#include <cctype>
#include <vector>

#include "ferrysched/errors.hpp"

namespace ferrysched {

std::string node_token(const NodeId& v) {
  switch (v.kind) {
    case NodeKind::PORT_TIME: return std::to_string(v.id) + "_" + std::to_string(v.slot);
    case NodeKind::ALPHA: return "A";
    case NodeKind::GAMMA: return "G";
    case NodeKind::BETA: return "B";
    case NodeKind::ZETA: return "Z" + std::to_string(v.id);
  }
  throw NameError("unknown node kind");
}

std::string var_name(const VarKey& key) {
  std::string s = key.role == VarRole::FERRY_ARC ? "Y_f" : "X_d";
  s += std::to_string(key.owner);
  s += "_" + node_token(key.arc.from);
  s += "_" + node_token(key.arc.to);
  if (s.size() > 255) throw NameError("name too long: " + s);
  return s;
}

namespace {

struct Token {
  char letter = 0;  // A/G/B/Z, or 0 for a number
  int value = 0;
};

std::vector<Token> split_tokens(const std::string& s, std::size_t pos, const std::string& name) {
  std::vector<Token> out;
  while (pos < s.size()) {
    if (s[pos] != '_') throw NameError("malformed name: " + name);
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != '_') ++pos;
    std::string piece = s.substr(start, pos - start);
    if (piece.empty()) throw NameError("malformed name: " + name);
    if (piece == "A" || piece == "G" || piece == "B") {
      out.push_back({piece[0], 0});
    } else if (piece[0] == 'Z') {
      for (std::size_t i = 1; i < piece.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(piece[i]))) throw NameError("malformed name: " + name);
      if (piece.size() == 1) throw NameError("malformed name: " + name);
      out.push_back({'Z', std::stoi(piece.substr(1))});
    } else {
      for (char c : piece)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw NameError("malformed name: " + name);
      out.push_back({0, std::stoi(piece)});
    }
  }
  return out;
}

// consume one node: a letter token, or a (port, slot) number pair
NodeId take_node(const std::vector<Token>& toks, std::size_t& at, const VarKey& key,
                 const std::string& name) {
  if (at >= toks.size()) throw NameError("malformed name: " + name);
  Token t = toks[at++];
  if (t.letter == 'A') return alpha_node(key.owner);
  if (t.letter == 'G') return gamma_node(key.owner);
  if (t.letter == 'B') return beta_node(key.owner);
  if (t.letter == 'Z') {
    if (key.role != VarRole::PAX_ARC || t.value != key.owner)
      throw NameError("malformed name: " + name);
    return zeta_node(t.value);
  }
  if (at >= toks.size() || toks[at].letter != 0) throw NameError("malformed name: " + name);
  return port_node(t.value, toks[at++].value);
}

}  // namespace

VarKey parse_var_name(const std::string& name) {
  VarKey key;
  std::size_t pos;
  if (name.rfind("Y_f", 0) == 0) {
    key.role = VarRole::FERRY_ARC;
    pos = 3;
  } else if (name.rfind("X_d", 0) == 0) {
    key.role = VarRole::PAX_ARC;
    pos = 3;
  } else {
    throw NameError("malformed name: " + name);
  }
  std::size_t end = pos;
  while (end < name.size() && std::isdigit(static_cast<unsigned char>(name[end]))) ++end;
  if (end == pos) throw NameError("malformed name: " + name);
  key.owner = std::stoi(name.substr(pos, end - pos));

  std::vector<Token> toks = split_tokens(name, end, name);
  std::size_t at = 0;
  key.arc.from = take_node(toks, at, key, name);
  key.arc.to = take_node(toks, at, key, name);
  if (at != toks.size()) throw NameError("malformed name: " + name);

  const NodeId &u = key.arc.from, &v = key.arc.to;
  if (key.role == VarRole::FERRY_ARC) {
    if (u.kind == NodeKind::ZETA || v.kind == NodeKind::ZETA) throw NameError("malformed name: " + name);
    if (u.kind == NodeKind::PORT_TIME && v.kind == NodeKind::PORT_TIME)
      key.arc.kind = u.id == v.id ? ArcKind::WAITING : ArcKind::SERVICE;
    else if (v.kind == NodeKind::PORT_TIME)
      key.arc.kind = ArcKind::IN_PORT;
    else if (u.kind == NodeKind::PORT_TIME)
      key.arc.kind = ArcKind::OUT_PORT;
    else
      key.arc.kind = ArcKind::SHIFT_LINK;
  } else {
    if (u.kind != NodeKind::PORT_TIME) throw NameError("malformed name: " + name);
    if (v.kind == NodeKind::PORT_TIME)
      key.arc.kind = u.id == v.id ? ArcKind::WAITING : ArcKind::SERVICE;
    else if (v.kind == NodeKind::ZETA)
      key.arc.kind = u.id == key.owner ? ArcKind::DESTINATION : ArcKind::INFEASIBILITY;
    else
      throw NameError("malformed name: " + name);
  }
  return key;
}

}  // namespace ferrysched
