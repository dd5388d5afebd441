#include "eerd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace eerd {

namespace {

constexpr int kWidth = 720;
constexpr int kPanelHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 36;
constexpr int kMarginBottom = 48;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Axis {
  double lo, hi;
  double to_px(double v, double px_lo, double px_hi) const {
    const double t = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
    return px_lo + t * (px_hi - px_lo);
  }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts,
                     const std::string& color) {
  std::string out = "  <polyline fill=\"none\" stroke=\"" + color +
                    "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) out += fmt(x) + "," + fmt(y) + " ";
  out += "\"/>\n";
  return out;
}

std::string axes(const Axis& xa, const Axis& ya, int y_top, int y_bottom,
                 const std::string& x_label, const std::string& y_label) {
  std::string out;
  const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  out += "  <rect x=\"" + fmt(x0) + "\" y=\"" + fmt(y_top) + "\" width=\"" +
         fmt(x1 - x0) + "\" height=\"" + fmt(y_bottom - y_top) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xa.lo + (xa.hi - xa.lo) * k / 4.0;
    const double xp = xa.to_px(xv, x0, x1);
    out += "  <line x1=\"" + fmt(xp) + "\" y1=\"" + fmt(y_bottom) + "\" x2=\"" +
           fmt(xp) + "\" y2=\"" + fmt(y_bottom + 5) + "\" stroke=\"black\"/>\n";
    out += "  <text x=\"" + fmt(xp) + "\" y=\"" + fmt(y_bottom + 20) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + fmt(xv) + "</text>\n";
    const double yv = ya.lo + (ya.hi - ya.lo) * k / 4.0;
    const double yp = ya.to_px(yv, y_bottom, y_top);
    out += "  <line x1=\"" + fmt(x0 - 5) + "\" y1=\"" + fmt(yp) + "\" x2=\"" + fmt(x0) +
           "\" y2=\"" + fmt(yp) + "\" stroke=\"black\"/>\n";
    out += "  <text x=\"" + fmt(x0 - 8) + "\" y=\"" + fmt(yp + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + fmt(yv) + "</text>\n";
  }
  out += "  <text x=\"" + fmt((x0 + x1) / 2) + "\" y=\"" + fmt(y_bottom + 38) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + x_label + "</text>\n";
  out += "  <text x=\"16\" y=\"" + fmt((y_top + y_bottom) / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt((y_top + y_bottom) / 2) + ")\">" + y_label + "</text>\n";
  return out;
}

}  // namespace

std::string svg_decay_plot(const Trajectory& traj, double predicted_rate) {
  const auto& s = traj.samples;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    fmt(kWidth) + "\" height=\"" + fmt(kPanelHeight) + "\">\n";
  out += "  <title>relative entropy decay</title>\n";
  if (s.size() < 2) return out + "</svg>\n";

  const double floor_log = -30.0;
  auto log10_clamped = [&](double v) {
    return (v > 0.0) ? std::max(std::log10(v), floor_log) : floor_log;
  };

  Axis xa{s.front().t, s.back().t};
  double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
  std::vector<std::pair<double, double>> measured, envelope;
  for (const auto& smp : s) {
    const double ym = log10_clamped(smp.H);
    const double ye =
        log10_clamped(traj.H0 * std::exp(-predicted_rate * smp.t));
    ylo = std::min({ylo, ym, ye});
    yhi = std::max({yhi, ym, ye});
  }
  if (yhi <= ylo) yhi = ylo + 1.0;
  Axis ya{ylo, yhi};
  const int y_top = kMarginTop, y_bottom = kPanelHeight - kMarginBottom;
  for (const auto& smp : s) {
    const double xp = xa.to_px(smp.t, kMarginLeft, kWidth - kMarginRight);
    measured.emplace_back(xp, ya.to_px(log10_clamped(smp.H), y_bottom, y_top));
    envelope.emplace_back(
        xp, ya.to_px(log10_clamped(traj.H0 * std::exp(-predicted_rate * smp.t)),
                     y_bottom, y_top));
  }
  out += axes(xa, ya, y_top, y_bottom, "t", "log10 H");
  out += polyline(envelope, "#d62728");
  out += polyline(measured, "#1f77b4");
  out += "  <text x=\"" + fmt(kWidth - kMarginRight - 8) + "\" y=\"" +
         fmt(y_top + 16) +
         "\" font-size=\"12\" text-anchor=\"end\" fill=\"#1f77b4\">measured H</text>\n";
  out += "  <text x=\"" + fmt(kWidth - kMarginRight - 8) + "\" y=\"" +
         fmt(y_top + 32) +
         "\" font-size=\"12\" text-anchor=\"end\" fill=\"#d62728\">envelope H0 "
         "exp(-t/(C1 C2))</text>\n";
  out += "</svg>\n";
  return out;
}

std::string svg_conservation_plot(const Trajectory& traj) {
  const auto& s = traj.samples;
  const int height = 2 * kPanelHeight;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    fmt(kWidth) + "\" height=\"" + fmt(height) + "\">\n";
  out += "  <title>conserved-quantity drift</title>\n";
  if (s.size() < 2) return out + "</svg>\n";

  const double E0 = s.front().E;
  const double Q0 = s.front().Q;
  Axis xa{s.front().t, s.back().t};

  auto panel = [&](int index, auto value, const std::string& label) {
    const int y_top = kMarginTop + index * kPanelHeight;
    const int y_bottom = (index + 1) * kPanelHeight - kMarginBottom;
    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
    for (const auto& smp : s) {
      ylo = std::min(ylo, value(smp));
      yhi = std::max(yhi, value(smp));
    }
    if (yhi <= ylo) {
      ylo -= 1e-16;
      yhi += 1e-16;
    }
    Axis ya{ylo, yhi};
    std::vector<std::pair<double, double>> pts;
    for (const auto& smp : s)
      pts.emplace_back(xa.to_px(smp.t, kMarginLeft, kWidth - kMarginRight),
                       ya.to_px(value(smp), y_bottom, y_top));
    out += axes(xa, ya, y_top, y_bottom, "t", label);
    out += polyline(pts, "#2ca02c");
  };

  panel(0, [&](const TrajectorySample& smp) { return (smp.E - E0) / E0; },
        "(E - E0)/E0");
  panel(1, [&](const TrajectorySample& smp) { return smp.Q - Q0; }, "Q - Q0");
  out += "</svg>\n";
  return out;
}

}  // namespace eerd
