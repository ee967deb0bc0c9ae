#ifndef FERRYSCHED_TIMEUTIL_HPP
#define FERRYSCHED_TIMEUTIL_HPP

#include <string>

namespace ferrysched {

// "H:MM" or "HH:MM", hours unbounded so "24:00" is a valid horizon end
int parse_hhmm(const std::string& text);

// minutes since midnight -> zero-padded "HH:MM"
std::string format_hhmm(int minutes);

}  // namespace ferrysched

#endif
