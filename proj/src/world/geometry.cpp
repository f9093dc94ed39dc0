#include "rulemon/world/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rulemon::world {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::fmod(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}

Polyline::Polyline(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw std::invalid_argument("polyline needs at least two points");
  cumulative_.reserve(points_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const double d = norm(points_[i] - points_[i - 1]);
    if (!(d > 0.0)) throw std::invalid_argument("polyline has repeated point at index " + std::to_string(i));
    cumulative_.push_back(cumulative_.back() + d);
  }
}

PolylineProjection Polyline::project(Vec2 p) const {
  PolylineProjection best;
  double best_dist = std::numeric_limits<double>::infinity();
  const std::size_t last = points_.size() - 2;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const Vec2 a = points_[i];
    const Vec2 d = points_[i + 1] - a;
    const double len = cumulative_[i + 1] - cumulative_[i];
    const double t_raw = dot(p - a, d) / (len * len);
    const double t = std::clamp(t_raw, 0.0, 1.0);
    const Vec2 foot = a + t * d;
    const double dist = norm(p - foot);
    if (dist < best_dist) {
      best_dist = dist;
      best.s = cumulative_[i] + t * len;
      best.heading = std::atan2(d.y, d.x);
      // Perpendicular offset to the segment line keeps the sign stable at
      // vertices and past the ends.
      best.lateral = cross(d, p - a) / len;
      best.overshoot = 0.0;
      if (i == 0 && t_raw < 0.0) best.overshoot = -t_raw * len;
      if (i == last && t_raw > 1.0) best.overshoot = (t_raw - 1.0) * len;
      if (best.overshoot == 0.0) best.lateral = std::copysign(dist, best.lateral);
    }
  }
  return best;
}

std::size_t Polyline::segment_at(double s) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return std::min(i, points_.size() - 2);
}

Vec2 Polyline::point_at(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_at(s);
  const double len = cumulative_[i + 1] - cumulative_[i];
  return points_[i] + ((s - cumulative_[i]) / len) * (points_[i + 1] - points_[i]);
}

double Polyline::heading_at(double s) const {
  const std::size_t i = segment_at(std::clamp(s, 0.0, length()));
  const Vec2 d = points_[i + 1] - points_[i];
  return std::atan2(d.y, d.x);
}

std::array<Vec2, 4> OrientedBox::corners() const {
  const Vec2 u{std::cos(heading), std::sin(heading)};
  const Vec2 v{-u.y, u.x};
  const Vec2 hl = (length / 2.0) * u;
  const Vec2 hw = (width / 2.0) * v;
  return {center + hl + hw, center + hl - hw, center - hl - hw, center - hl + hw};
}

namespace {

// True if the projections of both corner sets onto `axis` are disjoint or
// merely touch.
bool separated_on(const std::array<Vec2, 4>& a, const std::array<Vec2, 4>& b, Vec2 axis) {
  double amin = std::numeric_limits<double>::infinity(), amax = -amin;
  double bmin = amin, bmax = -amin;
  for (const auto& p : a) {
    amin = std::min(amin, dot(p, axis));
    amax = std::max(amax, dot(p, axis));
  }
  for (const auto& p : b) {
    bmin = std::min(bmin, dot(p, axis));
    bmax = std::max(bmax, dot(p, axis));
  }
  return amax <= bmin || bmax <= amin;
}

}  // namespace

bool intersects(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = a.corners();
  const auto cb = b.corners();
  for (double h : {a.heading, b.heading}) {
    const Vec2 u{std::cos(h), std::sin(h)};
    const Vec2 v{-u.y, u.x};
    if (separated_on(ca, cb, u) || separated_on(ca, cb, v)) return false;
  }
  return true;
}

}  // namespace rulemon::world
