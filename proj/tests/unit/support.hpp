#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "billiards/error.hpp"
#include "billiards/geometry.hpp"

namespace billiards::testing {

inline constexpr double kPi = std::numbers::pi;

inline Polygon unit_square() {
  RawPolygon raw;
  raw.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  raw.labels = {"B", "R", "T", "L"};
  return validate_polygon(raw);
}

/// 4x4 square with the hole [1.5, 2.5]^2.
inline Polygon holed_square() {
  RawPolygon raw;
  raw.outer = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  raw.holes = {{{1.5, 1.5}, {1.5, 2.5}, {2.5, 2.5}, {2.5, 1.5}}};
  raw.labels = {"B", "R", "T", "L", "HL", "HT", "HR", "HB"};
  return validate_polygon(raw);
}

/// Code of the billiards::Error thrown by f, or nullopt if none.
template <typename F>
std::optional<ErrorCode> error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Square orbits from the straight line (x0 + c t, s t): each crossing of a
// grid line x = k or y = k is a bounce, folded back by the triangle wave.
struct SquareBounce {
  std::string edge;
  double offset;
  double theta;
  double t;
};

inline double fold(double u) {
  const double m = std::fmod(u, 2.0);
  const double r = m < 0 ? m + 2.0 : m;
  return r > 1.0 ? 2.0 - r : r;
}

inline std::vector<SquareBounce> square_bounces(double x0, double theta, std::size_t n) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  struct Crossing {
    double t;
    bool vertical;
    long k;
  };
  std::vector<Crossing> crossings;
  const double reach = static_cast<double>(n) + 2.0;
  for (long k = 1; k <= static_cast<long>(reach); ++k) crossings.push_back({k / s, false, k});
  if (std::abs(c) > 1e-15) {
    for (long k = -static_cast<long>(reach) - 2; k <= static_cast<long>(reach) + 2; ++k) {
      const double t = (static_cast<double>(k) - x0) / c;
      if (t > 1e-12) crossings.push_back({t, true, k});
    }
  }
  std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) { return a.t < b.t; });

  std::vector<SquareBounce> out;
  int kv = 0;
  int kh = 0;
  for (std::size_t i = 0; i < n && i < crossings.size(); ++i) {
    const Crossing& cr = crossings[i];
    const double x = fold(x0 + c * cr.t);
    const double y = fold(s * cr.t);
    (cr.vertical ? kv : kh) += 1;
    const Vec2 d{c * (kv % 2 ? -1.0 : 1.0), s * (kh % 2 ? -1.0 : 1.0)};
    SquareBounce b;
    b.t = cr.t;
    Vec2 e;
    if (cr.vertical) {
      const bool right = (cr.k % 2 + 2) % 2 == 1;
      b.edge = right ? "R" : "L";
      b.offset = right ? y : 1.0 - y;
      e = right ? Vec2{0, 1} : Vec2{0, -1};
    } else {
      const bool top = cr.k % 2 == 1;
      b.edge = top ? "T" : "B";
      b.offset = top ? 1.0 - x : x;
      e = top ? Vec2{-1, 0} : Vec2{1, 0};
    }
    b.theta = std::atan2(e.x * d.y - e.y * d.x, e.x * d.x + e.y * d.y);
    out.push_back(b);
  }
  return out;
}

}  // namespace billiards::testing
