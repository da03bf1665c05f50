#include "billiards/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace billiards {

namespace {

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  // Avoid "-0.000000".
  if (std::string_view(buf) == "-0.000000") return "0.000000";
  return buf;
}

std::string point_list(const std::vector<Point>& points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out += ' ';
    out += fixed6(points[i].x) + ',' + fixed6(points[i].y);
  }
  return out;
}

class SvgWriter {
 public:
  explicit SvgWriter(double stroke) : stroke_(stroke) {}

  void include(Point p) {
    min_ = {std::min(min_.x, p.x), std::min(min_.y, p.y)};
    max_ = {std::max(max_.x, p.x), std::max(max_.y, p.y)};
  }

  void polygon(const char* cls, std::size_t copy, const std::vector<Point>& ring, const char* fill) {
    for (const Point& p : ring) include(p);
    body_ << "<polygon class=\"" << cls << "\" data-copy=\"" << copy << "\" points=\"" << point_list(ring)
          << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
  }

  void dot(std::size_t copy, Point p) {
    body_ << "<circle class=\"vertex\" data-copy=\"" << copy << "\" cx=\"" << fixed6(p.x) << "\" cy=\""
          << fixed6(p.y) << "\" r=\"" << fixed6(2.0 * stroke_) << "\"/>\n";
  }

  void polyline(const std::vector<Point>& points) {
    for (const Point& p : points) include(p);
    body_ << "<polyline class=\"trajectory\" points=\"" << point_list(points)
          << "\" fill=\"none\" stroke=\"red\"/>\n";
  }

  std::string finish() const {
    const double margin = 4.0 * stroke_;
    const double width = (max_.x - min_.x) + 2.0 * margin;
    const double height = (max_.y - min_.y) + 2.0 * margin;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fixed6(min_.x - margin) << ' '
        << fixed6(-max_.y - margin) << ' ' << fixed6(width) << ' ' << fixed6(height) << "\">\n"
        << "<g transform=\"scale(1,-1)\" stroke-width=\"" << fixed6(stroke_) << "\">\n"
        << body_.str() << "</g>\n</svg>\n";
    return out.str();
  }

 private:
  double stroke_;
  Point min_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point max_{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  std::ostringstream body_;
};

void draw_copy(SvgWriter& svg, std::size_t copy, const PolygonImage& image) {
  svg.polygon("copy", copy, image.rings.front(), "none");
  for (std::size_t h = 1; h < image.rings.size(); ++h) svg.polygon("hole", copy, image.rings[h], "gray");
  for (const auto& ring : image.rings) {
    for (const Point& p : ring) svg.dot(copy, p);
  }
}

}  // namespace

std::string corridor_svg(const Polygon& polygon, const Corridor& corridor) {
  SvgWriter svg(polygon.diameter() * 2e-3);
  for (std::size_t k = 0; k < corridor.copy_count(); ++k) {
    draw_copy(svg, k, transform_polygon(polygon, corridor.transforms[k]));
  }
  svg.polyline(corridor.unfolded_points);
  return svg.finish();
}

std::string orbit_svg(const Polygon& polygon, const Orbit& orbit) {
  SvgWriter svg(polygon.diameter() * 2e-3);
  draw_copy(svg, 0, transform_polygon(polygon, Isometry::identity()));
  std::vector<Point> points;
  for (std::size_t k = 0; k <= orbit.steps.size(); ++k) points.push_back(to_ambient(polygon, orbit.at(k)).base);
  svg.polyline(points);
  return svg.finish();
}

}  // namespace billiards
