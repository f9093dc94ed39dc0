#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace rulemon::world {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
/// z-component of the 3-D cross product; positive when b is to the left of a.
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

struct PolylineProjection {
  /// Arc length of the foot point.
  double s = 0.0;
  /// Signed distance, positive to the left of the direction of travel.
  double lateral = 0.0;
  /// Tangent heading of the segment holding the foot point.
  double heading = 0.0;
  /// How far the point lies before the start or past the end of the line,
  /// measured along the end segments (0 when the foot point is interior).
  double overshoot = 0.0;
};

/// Piecewise-linear curve with cumulative arc length.
class Polyline {
 public:
  Polyline() = default;
  /// Throws std::invalid_argument unless there are at least two points and
  /// consecutive points are distinct.
  explicit Polyline(std::vector<Vec2> points);

  const std::vector<Vec2>& points() const { return points_; }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  PolylineProjection project(Vec2 p) const;
  /// Point and tangent heading at arc length s (clamped to [0, length]).
  Vec2 point_at(double s) const;
  double heading_at(double s) const;

 private:
  std::size_t segment_at(double s) const;

  std::vector<Vec2> points_;
  std::vector<double> cumulative_;
};

/// Rectangle centred at `center`, long side along `heading`.
struct OrientedBox {
  Vec2 center;
  double heading = 0.0;
  double length = 0.0;
  double width = 0.0;

  std::array<Vec2, 4> corners() const;
};

/// Separating-axis test; touching boxes do not intersect.
bool intersects(const OrientedBox& a, const OrientedBox& b);

}  // namespace rulemon::world
