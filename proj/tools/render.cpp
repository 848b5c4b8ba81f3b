#include "render.hpp"

#include <sstream>

namespace perisched::tools {

namespace {

std::string chain_color(int chain) {
  // Golden-angle hue walk keeps neighbouring chains distinguishable.
  int hue = (chain * 137) % 360;
  return "hsl(" + std::to_string(hue) + ",65%,62%)";
}

std::string label(const Task& t) {
  return std::to_string(t.chain + 1) + "." + std::to_string(t.index + 1);
}

}  // namespace

std::string render_gantt_svg(const Instance& instance, const Schedule& schedule) {
  const double lane = 28;
  const double margin = 60;
  const double width = 1200;
  Time hyper = instance.periods().hyperperiod();
  double scale = (width - margin - 10) / static_cast<double>(hyper);
  double height = margin + lane * instance.num_resources() + 20;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"9\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  Time w = instance.periods().least();
  for (Time x = 0; x <= hyper; x += w) {
    double px = margin + static_cast<double>(x) * scale;
    svg << "<line x1=\"" << px << "\" y1=\"20\" x2=\"" << px << "\" y2=\"" << height - 20
        << "\" stroke=\"#ddd\"/>\n";
  }
  for (int m = 0; m < instance.num_resources(); ++m) {
    double y = margin + lane * m;
    svg << "<text x=\"4\" y=\"" << y + lane / 2 + 3 << "\">r" << m + 1 << "</text>\n";
    for (TaskId id : instance.resource_tasks(m)) {
      const Task& t = instance.task(id);
      Time first = mod_floor(schedule.start[static_cast<std::size_t>(id)], t.period);
      for (Time s = first; s < hyper; s += t.period) {
        // Occurrences running past the hyperperiod wrap to the left edge.
        Time len = std::min(t.proc_time, hyper - s);
        for (auto [from, span] : {std::pair{s, len}, std::pair{Time{0}, t.proc_time - len}}) {
          if (span <= 0) continue;
          double px = margin + static_cast<double>(from) * scale;
          svg << "<rect x=\"" << px << "\" y=\"" << y + 2 << "\" width=\""
              << static_cast<double>(span) * scale << "\" height=\"" << lane - 4 << "\" fill=\""
              << chain_color(t.chain) << "\" stroke=\"black\" stroke-width=\"0.5\"><title>"
              << label(t) << "</title></rect>\n";
        }
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_packing_svg(const Instance& instance, const Packing& packing) {
  const PeriodSet& ps = instance.periods();
  const double cell_w = 900.0 / static_cast<double>(ps.least());
  const double cell_h = std::max(6.0, 600.0 / static_cast<double>(ps.rows()));
  const double margin = 20;
  double width = margin * 2 + cell_w * static_cast<double>(ps.least());
  double height = margin * 2 + cell_h * static_cast<double>(ps.rows());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"monospace\" font-size=\"9\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
      << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const PlacedRect& r : packing.rects) {
    const Task& t = instance.task(r.task);
    double x = margin + static_cast<double>(r.x) * cell_w;
    double y = margin + static_cast<double>(r.y) * cell_h;
    svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << static_cast<double>(r.width) * cell_w
        << "\" height=\"" << static_cast<double>(r.height) * cell_h << "\" fill=\"" << chain_color(t.chain)
        << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    svg << "<text x=\"" << x + 2 << "\" y=\"" << y + 10 << "\">" << label(t) << "</text>\n";
  }
  for (int level = 1; level < ps.size(); ++level) {
    Time h = ps.hyperperiod() / ps.period(level);
    for (Time row = h; row < ps.rows(); row += h) {
      double y = margin + static_cast<double>(row) * cell_h;
      svg << "<line x1=\"" << margin << "\" y1=\"" << y << "\" x2=\"" << width - margin << "\" y2=\"" << y
          << "\" stroke=\"#444\" stroke-dasharray=\"" << 2 * level << "," << 2 * level << "\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace perisched::tools
