#include "ferrysched/solution_io.hpp"

#include <sstream>

#include "ferrysched/errors.hpp"
#include "ferrysched/names.hpp"

namespace ferrysched {

std::string write_solution(const IpModel& model, const MipResult& result) {
  if (!result.incumbent) throw IoError("no incumbent to write");
  const Assignment& a = *result.incumbent;
  Rational obj =
      result.objective ? *result.objective : assignment_objective(model, a);
  std::ostringstream os;
  os << "objective " << render_exact(obj) << "\n";
  for (const Variable& v : model.vars) {
    auto it = a.find(v.key());
    if (it == a.end() || it->second == 0) continue;
    os << v.name << " " << it->second << "\n";
  }
  return os.str();
}

MipResult read_solution(const IpModel& model, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  Rational header_obj;
  Assignment a;
  const Rational half(1, 2), tol(1, 10000);

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name, value;
    if (!(ls >> name)) continue;
    if (!(ls >> value) || (ls >> std::ws, !ls.eof()))
      throw IoError("line " + std::to_string(lineno) + ": expected `name value`");
    if (!have_header) {
      if (name != "objective")
        throw IoError("line " + std::to_string(lineno) + ": missing objective header");
      header_obj = parse_rational(value);
      have_header = true;
      continue;
    }
    Rational r = parse_rational(value);
    Rational nearest = rational_floor(r + half);
    Rational err = r - nearest;
    if (err < 0) err = -err;
    if (err > tol)
      throw IoError("line " + std::to_string(lineno) + ": " + name + " = " + value +
                    " is not near an integer");
    long long v = to_int64(nearest);
    if (v == 0) continue;
    VarKey key = parse_var_name(name);
    if (model.var_id(key) < 0)
      throw IoError("line " + std::to_string(lineno) + ": " + name + " is not in the model");
    a[key] += v;
  }
  if (!have_header) throw IoError("missing objective header");

  MipResult res;
  res.status = MipStatus::FEASIBLE_GAP;
  res.objective = assignment_objective(model, a);
  res.incumbent = std::move(a);
  res.bound = 0;
  res.gap = mip_gap(*res.objective, res.bound);
  res.notes.push_back("imported");
  Rational drift = *res.objective - header_obj;
  if (drift < 0) drift = -drift;
  Rational scale = *res.objective < 0 ? -*res.objective : *res.objective;
  if (scale < 1) scale = 1;
  if (drift > scale / 1000000)
    res.notes.push_back("header objective " + render_exact(header_obj) +
                        " differs from the recomputed " + render_exact(*res.objective));
  return res;
}

}  // namespace ferrysched
