#include "ferrysched/gantt.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <vector>

#include "ferrysched/timeutil.hpp"

namespace ferrysched {

std::string gantt_csv(const Schedule& s) {
  std::ostringstream os;
  os << "ferry,port,time_min\n";
  for (const FerryItinerary& it : s.ferries)
    for (const PortCall& call : it.calls) {
      os << it.ferry << "," << call.port << "," << call.arrive_min << "\n";
      os << it.ferry << "," << call.port << "," << call.depart_min << "\n";
    }
  return os.str();
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string px(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

}  // namespace

std::string gantt_svg(const ProblemInstance& inst, const Schedule& s) {
  const Horizon& hz = inst.horizon;
  const int n = inst.n_ports();
  const int span = hz.end_min - hz.start_min;
  const double left = 90, top = 56, colw = 110;
  const double body = std::max(320.0, std::min(920.0, span * 1.6));
  const double scale = span > 0 ? body / span : 1;
  const double width = left + n * colw + 180;
  const double height = top + body + 40;

  auto xport = [&](int port) { return left + (port - 0.5) * colw; };
  auto ytime = [&](int t) { return top + (t - hz.start_min) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\""
     << px(height) << "\" viewBox=\"0 0 " << px(width) << " " << px(height) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  os << "<text x=\"" << px(left) << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" "
        "fill=\"#222\">ferry movements</text>\n";

  for (int t = ((hz.start_min + 59) / 60) * 60; t <= hz.end_min; t += 60) {
    double y = ytime(t);
    os << "<line x1=\"" << px(left - 6) << "\" y1=\"" << px(y) << "\" x2=\""
       << px(left + n * colw) << "\" y2=\"" << px(y)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << px(left - 12) << "\" y=\"" << px(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555\">"
       << format_hhmm(t) << "</text>\n";
  }

  for (const Port& p : inst.ports) {
    double x = xport(p.id);
    os << "<line x1=\"" << px(x) << "\" y1=\"" << px(top) << "\" x2=\"" << px(x) << "\" y2=\""
       << px(top + body) << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << px(x) << "\" y=\"" << px(top - 10)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#222\">"
       << (p.name.empty() ? "P" + std::to_string(p.id) : p.name) << "</text>\n";
  }

  for (size_t fi = 0; fi < s.ferries.size(); ++fi) {
    const FerryItinerary& it = s.ferries[fi];
    const char* color = kPalette[fi % 8];
    std::vector<std::string> segment;
    auto flush = [&]() {
      if (segment.size() < 2) {
        segment.clear();
        return;
      }
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"2.5\" stroke-linejoin=\"round\" points=\"";
      for (size_t i = 0; i < segment.size(); ++i) os << (i ? " " : "") << segment[i];
      os << "\"/>\n";
      segment.clear();
    };
    size_t lc = 0;
    for (size_t c = 0; c < it.calls.size(); ++c) {
      const PortCall& call = it.calls[c];
      segment.push_back(px(xport(call.port)) + "," + px(ytime(call.arrive_min)));
      segment.push_back(px(xport(call.port)) + "," + px(ytime(call.depart_min)));
      bool linked = c + 1 < it.calls.size() && lc < it.legs.size() &&
                    it.legs[lc].from == call.port && it.legs[lc].depart_min == call.depart_min;
      if (linked) {
        ++lc;
      } else {
        flush();  // crew break or end of service: the pen lifts
      }
    }
    flush();
  }

  double lx = left + n * colw + 24, ly = top + 8;
  for (size_t fi = 0; fi < s.ferries.size(); ++fi) {
    const Ferry& f = inst.ferry(s.ferries[fi].ferry);
    os << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 26)
       << "\" y2=\"" << px(ly) << "\" stroke=\"" << kPalette[fi % 8]
       << "\" stroke-width=\"3\"/>\n";
    os << "<text x=\"" << px(lx + 32) << "\" y=\"" << px(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">"
       << (f.name.empty() ? "ferry " + std::to_string(f.id) : f.name) << "</text>\n";
    ly += 20;
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace ferrysched
