#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "oar/harness.hpp"

namespace oar {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 160, kTop = 30, kBottom = 55;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

void series(std::ofstream& out, const SweepReport& report, const Frame& f, const char* id,
            const char* color, double SweepRow::*loss) {
  std::string points;
  for (const auto& r : report.rows) {
    if (!points.empty()) points += ' ';
    points += fmt("%.2f", f.px(r.epsilon)) + ',' + fmt("%.2f", f.py(r.*loss));
  }
  out << "  <g id=\"" << id << "\">\n";
  if (report.rows.size() >= 2) {
    out << "    <polyline class=\"series\" data-series=\"" << id << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
  }
  for (const auto& r : report.rows) {
    out << "    <circle cx=\"" << fmt("%.2f", f.px(r.epsilon)) << "\" cy=\""
        << fmt("%.2f", f.py(r.*loss)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }
  out << "  </g>\n";
}

}  // namespace

void render_plot_svg(const SweepReport& report, const std::filesystem::path& path) {
  if (report.rows.empty()) throw std::invalid_argument("cannot plot an empty report");

  Frame f{report.rows.front().epsilon, report.rows.back().epsilon, 0.0, 0.0};
  if (f.x1 <= f.x0) {
    f.x0 -= 0.5;
    f.x1 += 0.5;
  }
  for (const auto& r : report.rows) {
    f.y1 = std::max({f.y1, r.individual_loss, r.collective_loss, r.baseline_loss});
  }
  f.y1 = f.y1 > 0.0 ? f.y1 * 1.05 : 1.0;

  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double ax = kLeft, ay = kHeight - kBottom, aw = kWidth - kLeft - kRight;
  out << "  <line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << ax + aw << "\" y2=\"" << ay
      << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << ax << "\" y2=\"" << kTop
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 5.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 5.0;
    out << "  <text x=\"" << fmt("%.2f", f.px(xv)) << "\" y=\"" << ay + 16
        << "\" text-anchor=\"middle\">" << fmt("%.3g", xv) << "</text>\n";
    out << "  <text x=\"" << ax - 6 << "\" y=\"" << fmt("%.2f", f.py(yv) + 4)
        << "\" text-anchor=\"end\">" << fmt("%.3g", yv) << "</text>\n";
  }
  out << "  <text x=\"" << ax + aw / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">epsilon (L2 budget)</text>\n";
  out << "  <text x=\"18\" y=\"" << (kTop + ay) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (kTop + ay) / 2 << ")\">loss of goal class at query</text>\n";

  series(out, report, f, "individual", "#d62728", &SweepRow::individual_loss);
  series(out, report, f, "collective", "#1f77b4", &SweepRow::collective_loss);

  const double lx = kWidth - kRight + 15;
  out << "  <g id=\"legend\">\n";
  out << "    <line x1=\"" << lx << "\" y1=\"" << kTop + 10 << "\" x2=\"" << lx + 20 << "\" y2=\""
      << kTop + 10 << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  out << "    <text x=\"" << lx + 26 << "\" y=\"" << kTop + 14 << "\">individual</text>\n";
  out << "    <line x1=\"" << lx << "\" y1=\"" << kTop + 30 << "\" x2=\"" << lx + 20 << "\" y2=\""
      << kTop + 30 << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  out << "    <text x=\"" << lx + 26 << "\" y=\"" << kTop + 34 << "\">collective</text>\n";
  out << "  </g>\n";
  out << "</svg>\n";
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace oar
