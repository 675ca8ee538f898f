#pragma once

// Tiny deterministic SVG writer. Coordinates are printed with two decimals so
// the same figure always produces the same bytes.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gridpolicy::svg {

class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none");
  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0);
  void circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke = "none");
  /// anchor: start, middle or end
  void text(double x, double y, const std::string& content, double size = 11.0, const std::string& anchor = "start",
            double rotate = 0.0);
  void title(const std::string& content);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

std::string num(double v);
std::string escape(const std::string& text);

/// Categorical palette, cycled.
const std::string& palette(std::size_t i);

/// Round-number tick positions covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 5);

struct Series {
  std::string label;
  std::vector<double> values;  // one per category
};

struct StackedPanel {
  std::string title;
  std::vector<Series> series;
  std::vector<bool> blank;  // categories rendered as empty (hatched) cells
};

/// Panels stacked vertically sharing a category axis. Positive values stack
/// upward from 0, negative values downward.
std::string stacked_bars(const std::string& title, const std::vector<std::string>& categories,
                         const std::vector<StackedPanel>& panels);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Three 2-D projections (x-y, x-z, y-z) of a point cloud with the ideal
/// point marked and an optional reference point.
std::string pareto_panels(const std::string& title, const std::array<std::string, 3>& axis_labels,
                          std::span<const Point3> points, std::optional<Point3> reference);

}  // namespace gridpolicy::svg
