#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace progss {

inline constexpr double kPi = 3.14159265358979323846;

// wraps into (-pi, pi]
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline Vec2 normalized(Vec2 v) {
  double n = norm(v);
  if (n < 1e-12) return {0.0, 0.0};
  return {v.x / n, v.y / n};
}

inline Vec2 rotated(Vec2 v, double a) {
  double c = std::cos(a), s = std::sin(a);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// planar pose plus tool height; yaw normalized to (-pi, pi]
struct Pose4 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double yaw = 0.0;

  Vec2 xy() const { return {x, y}; }
};

inline double planar_dist(const Pose4& a, const Pose4& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// axis-aligned rectangle, used for totes, spawn boxes and quadrants
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  Vec2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  // 0 inside, otherwise distance to the boundary
  double distance(Vec2 p) const {
    double dx = std::max({x0 - p.x, 0.0, p.x - x1});
    double dy = std::max({y0 - p.y, 0.0, p.y - y1});
    return std::hypot(dx, dy);
  }
};

// distance from a point to an oriented box footprint extruded to [0, h].
// Box frame: center c, yaw, half extents (hw, hd).
inline double point_box_distance(double px, double py, double pz, Vec2 c,
                                 double yaw, double hw, double hd, double h) {
  Vec2 local = rotated(Vec2{px, py} - c, -yaw);
  double dx = std::max(std::abs(local.x) - hw, 0.0);
  double dy = std::max(std::abs(local.y) - hd, 0.0);
  double dz = std::max({-pz, 0.0, pz - h});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline bool point_in_footprint(Vec2 p, Vec2 c, double yaw, double hw,
                               double hd) {
  Vec2 local = rotated(p - c, -yaw);
  return std::abs(local.x) <= hw && std::abs(local.y) <= hd;
}

}  // namespace progss
