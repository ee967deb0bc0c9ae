#include "ferrysched/mps.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "ferrysched/errors.hpp"
#include "ferrysched/names.hpp"

namespace ferrysched {

namespace {

void field(std::string& line, const std::string& tok, size_t width) {
  line += tok;
  line += tok.size() < width ? std::string(width - tok.size(), ' ') : "  ";
}

char sense_char(RowSense s) {
  switch (s) {
    case RowSense::LE: return 'L';
    case RowSense::EQ: return 'E';
    case RowSense::GE: return 'G';
  }
  return '?';
}

RowTag tag_of(const std::string& name) {
  if (name.rfind("FB_", 0) == 0) return RowTag::FERRY_BALANCE;
  if (name.rfind("BERTH_", 0) == 0) return RowTag::BERTH;
  if (name.rfind("PB_", 0) == 0) return RowTag::PAX_BALANCE;
  if (name.rfind("CAP_", 0) == 0) return RowTag::CAPACITY;
  if (name.rfind("DWELL_", 0) == 0) return RowTag::DWELL;
  if (name.rfind("TRANS_", 0) == 0) return RowTag::TRANSFER;
  throw IoError("row name outside the scheme: " + name);
}

Mode mode_of(const std::string& text) {
  if (text == "BASIC") return Mode::BASIC;
  if (text == "HOMEPORT_FREE") return Mode::HOMEPORT_FREE;
  if (text == "TWO_SHIFT") return Mode::TWO_SHIFT;
  throw IoError("unknown mode " + text);
}

}  // namespace

std::string export_mps(const IpModel& model) {
  std::ostringstream os;
  os << "* FERRYSCHED MPS\n";
  os << "* HASH " << model.meta.instance_hash << "\n";
  os << "* MODE " << to_string(model.meta.mode) << " PORTS " << model.meta.n_ports << " FERRIES "
     << model.meta.n_ferries << " Q " << model.meta.q << "\n";
  os << "NAME          FS_" << model.meta.instance_hash << "\n";

  os << "ROWS\n";
  os << " N  COST\n";
  for (const LinearConstraint& row : model.rows)
    os << " " << sense_char(row.sense) << "  " << row.name << "\n";

  // column-major entries, rows in model order within each column
  std::vector<std::vector<std::pair<int, const Rational*>>> by_var(model.vars.size());
  for (size_t r = 0; r < model.rows.size(); ++r)
    for (const auto& [id, coef] : model.rows[r].terms)
      by_var[id].push_back({static_cast<int>(r), &coef});

  os << "COLUMNS\n";
  os << "    M1        'MARKER'                 'INTORG'\n";
  for (size_t j = 0; j < model.vars.size(); ++j) {
    const Variable& v = model.vars[j];
    auto entry = [&](const std::string& row, const Rational& value) {
      std::string line = "    ";
      field(line, v.name, 20);
      field(line, row, 20);
      line += render_decimal(value, 12);
      os << line << "\n";
    };
    if (v.cost != 0) entry("COST", v.cost);
    for (const auto& [r, coef] : by_var[j]) entry(model.rows[r].name, *coef);
  }
  os << "    M2        'MARKER'                 'INTEND'\n";

  os << "RHS\n";
  for (const LinearConstraint& row : model.rows) {
    if (row.rhs == 0) continue;
    std::string line = "    ";
    field(line, "RHS", 10);
    field(line, row.name, 20);
    line += render_decimal(row.rhs, 12);
    os << line << "\n";
  }

  os << "BOUNDS\n";
  for (const Variable& v : model.vars) {
    std::string line;
    if (v.kind == VarKind::BINARY) {
      line = " BV ";
      field(line, "BND", 10);
      line += v.name;
    } else {
      line = " LI ";
      field(line, "BND", 10);
      field(line, v.name, 20);
      line += "0";
    }
    os << line << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

IpModel parse_mps(const std::string& text) {
  IpModel model;
  std::map<std::string, int> row_of;
  std::map<std::string, int> var_of;
  std::string obj_name;
  std::string section;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '*') {
      std::istringstream ls(line);
      std::string star, key;
      ls >> star >> key;
      if (key == "HASH") ls >> model.meta.instance_hash;
      if (key == "MODE") {
        std::string mode, kp, kf, kq;
        ls >> mode >> kp >> model.meta.n_ports >> kf >> model.meta.n_ferries >> kq >>
            model.meta.q;
        model.meta.mode = mode_of(mode);
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (line[0] != ' ') {  // section header
      section = tok[0];
      if (section == "NAME" && tok.size() > 1 && model.meta.instance_hash.empty() &&
          tok[1].rfind("FS_", 0) == 0)
        model.meta.instance_hash = tok[1].substr(3);
      if (section == "ENDATA") break;
      continue;
    }

    auto fail = [&](const std::string& why) {
      throw IoError("line " + std::to_string(lineno) + ": " + why);
    };

    if (section == "ROWS") {
      if (tok.size() != 2) fail("expected sense and row name");
      if (tok[0] == "N") {
        if (!obj_name.empty()) fail("second objective row");
        obj_name = tok[1];
      } else {
        RowSense sense = tok[0] == "E"   ? RowSense::EQ
                         : tok[0] == "L" ? RowSense::LE
                         : tok[0] == "G" ? RowSense::GE
                                         : throw IoError("line " + std::to_string(lineno) +
                                                         ": unknown row sense " + tok[0]);
        if (!row_of.emplace(tok[1], static_cast<int>(model.rows.size())).second)
          fail("duplicate row " + tok[1]);
        LinearConstraint row;
        row.name = tok[1];
        row.sense = sense;
        row.tag = tag_of(tok[1]);
        row.rhs = 0;
        model.rows.push_back(std::move(row));
      }
    } else if (section == "COLUMNS") {
      if (tok.size() >= 3 && tok[1] == "'MARKER'") continue;
      if (tok.size() < 3 || tok.size() % 2 == 0) fail("expected column with (row, value) pairs");
      int j;
      if (auto it = var_of.find(tok[0]); it != var_of.end()) {
        j = it->second;
      } else {
        VarKey key = parse_var_name(tok[0]);
        Variable v;
        v.name = tok[0];
        v.role = key.role;
        v.owner = key.owner;
        v.arc = key.arc;
        v.kind = VarKind::INTEGER;
        v.cost = 0;
        j = static_cast<int>(model.vars.size());
        var_of.emplace(tok[0], j);
        model.index.emplace(key, j);
        model.vars.push_back(std::move(v));
      }
      for (size_t p = 1; p + 1 < tok.size(); p += 2) {
        Rational value = parse_rational(tok[p + 1]);
        if (tok[p] == obj_name) {
          model.vars[j].cost = value;
        } else {
          auto it = row_of.find(tok[p]);
          if (it == row_of.end()) fail("unknown row " + tok[p]);
          model.rows[it->second].terms.emplace_back(j, value);
        }
      }
    } else if (section == "RHS") {
      if (tok.size() < 3 || tok.size() % 2 == 0) fail("expected rhs set with (row, value) pairs");
      for (size_t p = 1; p + 1 < tok.size(); p += 2) {
        auto it = row_of.find(tok[p]);
        if (it == row_of.end()) fail("unknown row " + tok[p]);
        model.rows[it->second].rhs = parse_rational(tok[p + 1]);
      }
    } else if (section == "BOUNDS") {
      if (tok[0] == "BV") {
        if (tok.size() != 3) fail("expected BV set name");
        auto it = var_of.find(tok[2]);
        if (it == var_of.end()) fail("unknown column " + tok[2]);
        model.vars[it->second].kind = VarKind::BINARY;
      } else if (tok[0] == "LI") {
        if (tok.size() != 4) fail("expected LI set name value");
        auto it = var_of.find(tok[2]);
        if (it == var_of.end()) fail("unknown column " + tok[2]);
        if (tok[3] != "0") fail("only a zero integer lower bound is supported");
        model.vars[it->second].kind = VarKind::INTEGER;
      } else {
        fail("unsupported bound type " + tok[0]);
      }
    } else if (section == "RANGES") {
      fail("RANGES are not supported");
    } else {
      fail("content outside a known section");
    }
  }
  if (obj_name.empty()) throw IoError("no objective row");
  if (model.vars.empty()) throw IoError("no columns");

  // terms arrive in column order; rows store them by ascending variable id,
  // which column order already delivers
  return model;
}

std::string export_lp_text(const IpModel& model) {
  std::ostringstream os;
  os << "\\ ferrysched model " << model.meta.instance_hash << "\n";
  os << "Minimize\n COST:\n";
  for (const Variable& v : model.vars) {
    if (v.cost == 0) continue;
    os << "   " << (v.cost < 0 ? "- " : "+ ") << render_decimal(abs(v.cost), 12) << " " << v.name
       << "\n";
  }
  os << "Subject To\n";
  for (const LinearConstraint& row : model.rows) {
    os << " " << row.name << ":\n";
    for (const auto& [id, coef] : row.terms)
      os << "   " << (coef < 0 ? "- " : "+ ") << render_decimal(abs(coef), 12) << " "
         << model.vars[id].name << "\n";
    const char* rel = row.sense == RowSense::LE ? "<=" : row.sense == RowSense::GE ? ">=" : "=";
    os << "   " << rel << " " << render_decimal(row.rhs, 12) << "\n";
  }
  os << "Binaries\n";
  for (const Variable& v : model.vars)
    if (v.kind == VarKind::BINARY) os << " " << v.name << "\n";
  os << "Generals\n";
  for (const Variable& v : model.vars)
    if (v.kind == VarKind::INTEGER) os << " " << v.name << "\n";
  os << "End\n";
  return os.str();
}

}  // namespace ferrysched
