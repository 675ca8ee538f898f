#include "gridpolicy/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace gridpolicy::svg {

std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;  // avoid "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const std::string& palette(std::size_t i) {
  static const std::vector<std::string> colors{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colors[i % colors.size()];
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void Document::circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" fill=\"" + fill +
           "\" stroke=\"" + stroke + "\"/>\n";
}

void Document::text(double x, double y, const std::string& content, double size, const std::string& anchor,
                    double rotate) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + num(size) + "\" text-anchor=\"" + anchor +
           "\"";
  if (rotate != 0.0) body_ += " transform=\"rotate(" + num(rotate) + " " + num(x) + " " + num(y) + ")\"";
  body_ += ">" + escape(content) + "</text>\n";
}

void Document::title(const std::string& content) { text(width_ / 2, 20, content, 14, "middle"); }

std::string Document::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" + num(height_) +
         "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\" font-family=\"sans-serif\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  const long first = static_cast<long>(std::floor(lo / step + 1e-9));
  const long last = static_cast<long>(std::ceil(hi / step - 1e-9));
  for (long i = first; i <= last; ++i) ticks.push_back(static_cast<double>(i) * step);
  return ticks;
}

namespace {

std::string tick_label(double v) {
  char buf[64];
  const double a = std::abs(v);
  if (a != 0.0 && (a >= 1e5 || a < 1e-3)) std::snprintf(buf, sizeof buf, "%.2g", v);
  else std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string stacked_bars(const std::string& title, const std::vector<std::string>& categories,
                         const std::vector<StackedPanel>& panels) {
  const double left = 60;
  const double legend_w = 190;
  const double plot_w = std::max<double>(480, 22.0 * static_cast<double>(categories.size()));
  const double panel_h = 170;
  const double gap = 50;
  const double top = 40;
  const double width = left + plot_w + legend_w;
  const double height = top + static_cast<double>(panels.size()) * (panel_h + gap) + 10;
  Document doc(width, height);
  doc.title(title);

  const double slot = plot_w / std::max<double>(1, static_cast<double>(categories.size()));
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const StackedPanel& panel = panels[p];
    const double y0 = top + static_cast<double>(p) * (panel_h + gap);

    double max_up = 0.0;
    double max_down = 0.0;
    for (std::size_t c = 0; c < categories.size(); ++c) {
      double up = 0.0;
      double down = 0.0;
      for (const Series& s : panel.series) {
        const double v = c < s.values.size() ? s.values[c] : 0.0;
        (v >= 0 ? up : down) += v;
      }
      max_up = std::max(max_up, up);
      max_down = std::min(max_down, down);
    }
    if (max_up == 0.0 && max_down == 0.0) max_up = 1.0;
    const auto ticks = nice_ticks(max_down, max_up, 4);
    const double lo = std::min(max_down, ticks.front());
    const double hi = std::max(max_up, ticks.back());
    auto ypos = [&](double v) { return y0 + 20 + (hi - v) / (hi - lo) * (panel_h - 20); };

    doc.text(left, y0 + 12, panel.title, 12);
    for (double t : ticks) {
      doc.line(left, ypos(t), left + plot_w, ypos(t), "#e0e0e0", 0.5);
      doc.text(left - 4, ypos(t) + 4, tick_label(t), 9, "end");
    }
    doc.line(left, ypos(0), left + plot_w, ypos(0), "#000000", 1.0);

    for (std::size_t c = 0; c < categories.size(); ++c) {
      const double x = left + static_cast<double>(c) * slot + 0.15 * slot;
      const double w = 0.7 * slot;
      if (c < panel.blank.size() && panel.blank[c]) {
        doc.rect(x, ypos(hi), w, ypos(lo) - ypos(hi), "#f4f4f4", "#cccccc");
        continue;
      }
      double up = 0.0;
      double down = 0.0;
      for (std::size_t s = 0; s < panel.series.size(); ++s) {
        const double v = c < panel.series[s].values.size() ? panel.series[s].values[c] : 0.0;
        if (v == 0.0) continue;
        if (v > 0) {
          doc.rect(x, ypos(up + v), w, ypos(up) - ypos(up + v), palette(s));
          up += v;
        } else {
          doc.rect(x, ypos(down), w, ypos(down + v) - ypos(down), palette(s));
          down += v;
        }
      }
    }
    for (std::size_t c = 0; c < categories.size(); ++c) {
      doc.text(left + (static_cast<double>(c) + 0.5) * slot, y0 + panel_h + 14, categories[c], 9, "middle");
    }
    for (std::size_t s = 0; s < panel.series.size(); ++s) {
      const double ly = y0 + 24 + 14.0 * static_cast<double>(s);
      doc.rect(left + plot_w + 12, ly - 9, 10, 10, palette(s));
      doc.text(left + plot_w + 26, ly, panel.series[s].label, 10);
    }
  }
  return doc.str();
}

std::string pareto_panels(const std::string& title, const std::array<std::string, 3>& axis_labels,
                          std::span<const Point3> points, std::optional<Point3> reference) {
  if (points.empty()) throw std::invalid_argument("pareto_panels: no points");
  const double panel = 260;
  const double margin = 60;
  const double width = 3 * (panel + margin) + 20;
  const double height = panel + 110;
  Document doc(width, height);
  doc.title(title);

  auto coord = [](const Point3& p, int axis) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; };
  Point3 ideal{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity()};
  for (const Point3& p : points) {
    ideal.x = std::min(ideal.x, p.x);
    ideal.y = std::min(ideal.y, p.y);
    ideal.z = std::min(ideal.z, p.z);
  }

  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [ax, ay] = pairs[k];
    const double x0 = margin + static_cast<double>(k) * (panel + margin);
    const double y0 = 40;

    auto range = [&](int axis) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const Point3& p : points) {
        lo = std::min(lo, coord(p, axis));
        hi = std::max(hi, coord(p, axis));
      }
      if (reference) {
        lo = std::min(lo, coord(*reference, axis));
        hi = std::max(hi, coord(*reference, axis));
      }
      const auto ticks = nice_ticks(lo, hi, 4);
      return std::make_pair(std::min(lo, ticks.front()), std::max(hi, ticks.back()));
    };
    const auto [xlo, xhi] = range(ax);
    const auto [ylo, yhi] = range(ay);
    auto px = [&](double v) { return x0 + (v - xlo) / (xhi - xlo) * panel; };
    auto py = [&](double v) { return y0 + panel - (v - ylo) / (yhi - ylo) * panel; };

    doc.rect(x0, y0, panel, panel, "none", "#000000");
    for (double t : nice_ticks(xlo, xhi, 4)) {
      doc.line(px(t), y0 + panel, px(t), y0 + panel + 4, "#000000");
      doc.text(px(t), y0 + panel + 15, tick_label(t), 9, "middle");
    }
    for (double t : nice_ticks(ylo, yhi, 4)) {
      doc.line(x0 - 4, py(t), x0, py(t), "#000000");
      doc.text(x0 - 6, py(t) + 3, tick_label(t), 9, "end");
    }
    doc.text(x0 + panel / 2, y0 + panel + 32, axis_labels[static_cast<std::size_t>(ax)], 11, "middle");
    doc.text(x0 - 44, y0 + panel / 2, axis_labels[static_cast<std::size_t>(ay)], 11, "middle", -90);

    for (const Point3& p : points) doc.circle(px(coord(p, ax)), py(coord(p, ay)), 3, "#1f77b4");
    if (!points.empty()) {
      const double ix = px(coord(ideal, ax));
      const double iy = py(coord(ideal, ay));
      doc.line(ix - 5, iy - 5, ix + 5, iy + 5, "#d62728", 2);
      doc.line(ix - 5, iy + 5, ix + 5, iy - 5, "#d62728", 2);
    }
    if (reference) {
      doc.rect(px(coord(*reference, ax)) - 4, py(coord(*reference, ay)) - 4, 8, 8, "#ff7f0e", "#000000");
    }
  }
  const double ly = height - 18;
  doc.circle(margin, ly - 4, 3, "#1f77b4");
  doc.text(margin + 8, ly, "archive", 10);
  doc.line(margin + 80, ly - 8, margin + 88, ly, "#d62728", 2);
  doc.line(margin + 80, ly, margin + 88, ly - 8, "#d62728", 2);
  doc.text(margin + 94, ly, "ideal point", 10);
  if (reference) {
    doc.rect(margin + 180, ly - 8, 8, 8, "#ff7f0e", "#000000");
    doc.text(margin + 194, ly, "reference", 10);
  }
  return doc.str();
}

}  // namespace gridpolicy::svg
