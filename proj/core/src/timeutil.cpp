#include "ferrysched/timeutil.hpp"

#include <cctype>
#include <cstdio>

#include "ferrysched/errors.hpp"

namespace ferrysched {

int parse_hhmm(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 3 != text.size())
    throw SchemaError("not a HH:MM time: '" + text + "'");
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == colon) continue;
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw SchemaError("not a HH:MM time: '" + text + "'");
  }
  int hours = std::stoi(text.substr(0, colon));
  int mins = std::stoi(text.substr(colon + 1));
  if (mins >= 60) throw SchemaError("minutes out of range: '" + text + "'");
  return hours * 60 + mins;
}

std::string format_hhmm(int minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

}  // namespace ferrysched
