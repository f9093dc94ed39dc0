#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rulemon/predicates/labeler.hpp"
#include "rulemon/predicates/params.hpp"
#include "rulemon/predicates/predicates.hpp"
#include "rulemon/predicates/proposition.hpp"
#include "support/fixtures.hpp"

using namespace rulemon::predicates;
using namespace rulemon::world;
using rulemon::testing::make_map;
using rulemon::testing::place;
using rulemon::testing::scene_of;
using rulemon::testing::straight_lanes;
using rulemon::testing::track;

namespace {

AgentState at(AgentId id, double x, double y) {
  AgentState a;
  a.id = id;
  a.x = x;
  a.y = y;
  a.length = 4.5;
  a.width = 1.8;
  return a;
}

bool label_at(const Labeler& l, const std::string& name, std::vector<AgentId> tuple, std::size_t t) {
  return l.value(resolve_proposition(name), tuple, t);
}

}  // namespace

TEST_CASE("parameters: defaults, names and validation") {
  PredicateParams p;
  CHECK(p.rho_dense == 20.0);
  CHECK(p.n_dense == 8);
  CHECK(p.v_thresh == doctest::Approx(2.7778).epsilon(1e-4));
  CHECK_NOTHROW(p.validate());
  CHECK(p.with({{"delta_near", 3.0}}).delta_near == 3.0);
  CHECK_THROWS_AS((void)p.with({{"delta_near", 0.0}}), ParamError);
  CHECK_THROWS_AS((void)p.with({{"n_dense", 2.5}}), ParamError);
  CHECK_THROWS_AS((void)p.with({{"speed_limit", 1.0}}), ParamError);
  for (const auto& name : PredicateParams::names()) {
    PredicateParams q;
    q.set(name, 7.0);
    CHECK(q.get(name) == 7.0);
  }
}

TEST_CASE("proposition names resolve to predicates and slots") {
  auto r = resolve_proposition("behind_ij");
  CHECK(r.predicate == Predicate::Behind);
  CHECK(r.slots == std::vector<int>{0, 1});
  r = resolve_proposition("lane_end_k");
  CHECK(r.predicate == Predicate::LaneEnd);
  CHECK(r.slots == std::vector<int>{2});
  r = resolve_proposition("motorway");
  CHECK(r.predicate == Predicate::Motorway);
  CHECK(r.slots == std::vector<int>{0});
  CHECK(resolve_proposition("in_direct_front_ij").predicate == Predicate::InDirectFront);
  CHECK(resolve_proposition("sd_rear_i").predicate == Predicate::SafeDistanceRear);
  CHECK_THROWS_AS((void)resolve_proposition("teleport_i"), UnknownProposition);
  CHECK_THROWS_AS((void)resolve_proposition("behind_i"), UnknownProposition);
  CHECK_THROWS_AS((void)resolve_proposition("dense_ij"), UnknownProposition);
  for (Predicate p : all_predicates()) CHECK(predicate_from_base(base_name(p)) == p);
}

TEST_CASE("relational labels") {
  const auto map = make_map(straight_lanes(3));
  SUBCASE("fully behind in the same lane") {
    const auto i = place(*map, 1, 100, 0);
    const auto j = place(*map, 2, 120, 0);
    const Relation r = relational(i, j, *map, 5.0);
    CHECK(r.behind);
    CHECK_FALSE(r.front);
    CHECK_FALSE(r.left);
    CHECK_FALSE(r.right);
  }
  SUBCASE("alongside in the left lane with equal centres: bumpers tie") {
    const auto i = place(*map, 1, 100, 3.5, 0, 4.0);
    const auto j = place(*map, 2, 100, 0, 0, 4.0);
    const Relation r = relational(i, j, *map, 5.0);
    CHECK_FALSE(r.behind);
    CHECK_FALSE(r.front);
    CHECK(r.left);
    CHECK_FALSE(r.right);
  }
  SUBCASE("partially overlapping regions") {
    const auto i = place(*map, 1, 98, 3.5);
    const auto j = place(*map, 2, 100, 0);
    const Relation r = relational(i, j, *map, 5.0);
    CHECK(r.behind);
    CHECK(r.left);
  }
  SUBCASE("fully past on the right") {
    const auto j = place(*map, 2, 100, 3.5);
    const auto beside = place(*map, 1, 106, 0);
    CHECK(relational(beside, j, *map, 5.0).right);
    CHECK(relational(beside, j, *map, 5.0).front);
    // gap = 115 - 2.25 - 102.25 = 10.5 > 5
    const auto past = place(*map, 1, 115, 0);
    const Relation r = relational(past, j, *map, 5.0);
    CHECK(r.front);
    CHECK_FALSE(r.right);
    CHECK_FALSE(r.behind);
  }
  SUBCASE("chains reach beyond the adjacent lane") {
    const auto i = place(*map, 1, 100, 7.0);
    const auto j = place(*map, 2, 100, 0);
    CHECK(relational(i, j, *map, 5.0).left);
    CHECK(relational(j, i, *map, 5.0).right);
  }
}

TEST_CASE("dense counts neighbours strictly inside rho") {
  PredicateParams p;
  CHECK_FALSE(dense(scene_of({at(0, 0, 0)}), 0, p));
  for (double radius : {19.9, 20.0}) {
    std::vector<AgentState> agents{at(0, 0, 0)};
    for (int k = 0; k < 8; ++k) {
      const double a = k * std::numbers::pi / 4;
      agents.push_back(at(k + 1, radius * std::cos(a), radius * std::sin(a)));
    }
    CHECK(dense(scene_of(agents), 0, p) == (radius < 20.0));
    agents.pop_back();
    CHECK_FALSE(dense(scene_of(agents), 0, p));
  }
}

TEST_CASE("safe distance") {
  PredicateParams p;
  CHECK(required_distance(20, 20, p) == doctest::Approx(20.0));
  CHECK(required_distance(10, 0, p) == doctest::Approx(10.0 + 100.0 / 12.0));
  CHECK(required_distance(0, 30, p) == 0.0);

  const auto map = make_map(straight_lanes(2));
  const auto lone = place(*map, 1, 100, 0, 20);
  CHECK(safe_distance_front(scene_of({lone}), 1, *map, p));
  CHECK(safe_distance_rear(scene_of({lone}), 1, *map, p));
  for (auto [gap, safe] : {std::pair{25.0, true}, std::pair{15.0, false}}) {
    const auto front = place(*map, 2, 100 + 4.5 + gap, 0, 20);
    const Scene s = scene_of({lone, front});
    CHECK(safe_distance_front(s, 1, *map, p) == safe);
    CHECK(safe_distance_rear(s, 2, *map, p) == safe);
    CHECK(safe_distance_rear(s, 1, *map, p));
    CHECK(safe_distance_front(s, 2, *map, p));
  }
  // An agent in the next lane is not a predecessor.
  const auto beside = place(*map, 3, 110, 3.5, 0);
  CHECK(safe_distance_front(scene_of({lone, beside}), 1, *map, p));
}

TEST_CASE("direct predecessor has no agent in between") {
  const auto map = make_map(straight_lanes(2));
  const Scene s = scene_of({place(*map, 1, 100, 0), place(*map, 2, 130, 0), place(*map, 3, 115, 0),
                            place(*map, 4, 110, 3.5)});
  CHECK(predecessor(s, 1) == 3);
  CHECK(predecessor(s, 3) == 2);
  CHECK_FALSE(predecessor(s, 2).has_value());
  CHECK(follower(s, 2) == 3);
  CHECK(in_direct_front(s, 1, 3));
  CHECK_FALSE(in_direct_front(s, 1, 2));
  CHECK_FALSE(in_direct_front(s, 1, 4));
}

TEST_CASE("point labels") {
  PredicateParams p;
  const auto map = make_map(straight_lanes(2));
  auto i = place(*map, 1, 100, 0, 15);
  auto j = place(*map, 2, 100, 3.5, 12);
  CHECK(speed_diff(i, j, p));
  CHECK_FALSE(speed_diff(j, i, p));
  j.speed = 12.3;
  CHECK_FALSE(speed_diff(i, j, p));
  CHECK(near(i, j, p));
  i.acceleration = 0.6;
  CHECK(accelerate(i, p));
  i.acceleration = 0.5;
  CHECK_FALSE(accelerate(i, p));

  auto lanes = straight_lanes(1, 3.5, 200);
  lanes[0].end_s = 100;
  const auto ending = make_map(lanes);
  const auto a = place(*ending, 1, 85 - 2.25, 0);
  CHECK(a.s_front() == doctest::Approx(85));
  CHECK(lane_end(a, *ending, p));
  CHECK_FALSE(lane_end(place(*ending, 1, 50, 0), *ending, p));
  CHECK_FALSE(lane_end(a, *map, p));
}

TEST_CASE("lone agent on a motorway map") {
  const auto map = make_map(straight_lanes(2));
  const Trace trace = build_trace(map, track(1, 0, 9, 0.1, [](double t) { return Vec2{100 + 20 * t, 0}; }));
  const Labeler l(trace, {});
  const std::vector<AgentId> ego{1};
  for (std::size_t t = 0; t < trace.size(); ++t) {
    CHECK(label_at(l, "motorway", ego, t));
    CHECK_FALSE(label_at(l, "built_up_i", ego, t));
    CHECK_FALSE(label_at(l, "dense_i", ego, t));
    CHECK_FALSE(label_at(l, "colliding_i", ego, t));
    CHECK_FALSE(label_at(l, "lane_change_i", ego, t));
    CHECK_FALSE(label_at(l, "diverging_lane_i", ego, t));
    CHECK_FALSE(label_at(l, "acceleration_lane_i", ego, t));
    CHECK_FALSE(label_at(l, "merged_i", ego, t));
    CHECK(label_at(l, "sd_front_i", ego, t));
    CHECK(label_at(l, "sd_rear_i", ego, t));
  }
  const LabelTrace lt = l.label(resolve_proposition("motorway_i"), ego);
  CHECK(lt.first == 0);
  CHECK(lt.values.size() == trace.size());
}

TEST_CASE("lane change is false at the first frame and true on a switch") {
  const auto map = make_map(straight_lanes(2));
  const Trace trace = build_trace(map, track(1, 0, 20, 0.1, [](double t) { return Vec2{100 + 20 * t, 1.75 * t}; }));
  const Labeler l(trace, {});
  int changes = 0;
  for (std::size_t t = 0; t < trace.size(); ++t) changes += l.lane_change(1, t);
  CHECK(changes == 1);
  CHECK_FALSE(l.lane_change(1, 0));
}

TEST_CASE("colliding: overlap and leaving the road") {
  const auto map = make_map(straight_lanes(2));
  const auto a = place(*map, 1, 100, 0);
  const auto b = place(*map, 2, 103, 0.5);
  const Scene s = scene_of({a, b});
  CHECK(colliding(s, 1, *map));
  CHECK(colliding(s, 2, *map));
  CHECK_FALSE(colliding(scene_of({a, place(*map, 2, 106, 0)}), 1, *map));
  auto edge = place(*map, 3, 200, -1.5);
  CHECK(colliding(scene_of({edge}), 3, *map));
}

TEST_CASE("property: merged latches once the merge point is passed") {
  auto lanes = straight_lanes(1, 3.5, 400);
  lanes[0].merge_s = 200;
  const auto map = make_map(lanes);
  // Oscillates across the merge point.
  const Trace trace = build_trace(map, track(1, 0, 200, 0.1, [](double t) { return Vec2{195 + 10 * std::sin(t), 0}; }));
  const Labeler l(trace, {});
  bool seen = false;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const bool m = l.merged(1, t);
    CHECK(m >= seen);
    if (trace.scene(t).find(1)->s > 200) CHECK(m);
    seen = m;
  }
  CHECK(seen);
  CHECK_FALSE(l.merged(1, 0));
}

TEST_CASE("property: relational consistency and symmetry on random geometry") {
  const auto map = make_map(straight_lanes(3));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(50, 150);
  std::uniform_int_distribution<int> lane(0, 2);
  std::uniform_real_distribution<double> len(3.0, 6.0);
  for (int n = 0; n < 2000; ++n) {
    const double length = len(rng);
    const auto i = place(*map, 1, x(rng), 3.5 * lane(rng), 0, length);
    const auto j = place(*map, 2, x(rng), 3.5 * lane(rng), 0, length);
    const Relation ij = relational(i, j, *map, 5.0);
    const Relation ji = relational(j, i, *map, 5.0);
    CHECK_FALSE((ij.behind && ij.front));
    CHECK(ij.left == ji.right);
    CHECK(ij.right == ji.left);
    CHECK_FALSE((ij.left && ij.right));
  }
}

TEST_CASE("property: collision by overlap is symmetric and speed_diff irreflexive") {
  const auto map = make_map(straight_lanes(3));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> x(100, 112);
  std::uniform_real_distribution<double> y(2.5, 4.5);
  std::uniform_real_distribution<double> v(0, 40);
  PredicateParams p;
  for (int n = 0; n < 2000; ++n) {
    auto a = place(*map, 1, x(rng), y(rng), v(rng));
    auto b = place(*map, 2, x(rng), y(rng), v(rng));
    const Scene s = scene_of({a, b});
    CHECK(colliding(s, 1, *map) == colliding(s, 2, *map));
    CHECK_FALSE(speed_diff(a, a, p));
  }
}

TEST_CASE("property: an epsilon shift flips a label only within epsilon of its threshold") {
  constexpr double eps = 1e-6;
  PredicateParams p;
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto map = make_map(straight_lanes(2));
  for (int n = 0; n < 3000; ++n) {
    // Values clustered around each threshold so that some land within eps.
    const double shift = u(rng) * (n % 2 == 0 ? 1e-5 : 1.0);

    auto i = place(*map, 1, 100, 0, 15);
    auto j = place(*map, 2, 110, 0, 15 - p.v_thresh + shift);
    const double v_margin = i.speed - (j.speed + p.v_thresh);
    const bool sd = speed_diff(i, j, p);
    j.speed += eps;
    const bool sd_up = speed_diff(i, j, p);
    j.speed -= 2 * eps;
    const bool sd_down = speed_diff(i, j, p);
    if (sd != sd_up || sd != sd_down) CHECK(std::abs(v_margin) < eps + 1e-12);

    i.acceleration = p.a_limit + shift;
    const bool acc = accelerate(i, p);
    i.acceleration += eps;
    const bool acc_up = accelerate(i, p);
    if (acc != acc_up) CHECK(std::abs(shift) < eps + 1e-12);

    const double front_x = 100 + 4.5 + required_distance(15, 15, p) + shift;
    auto f = place(*map, 3, front_x, 0, 15);
    const double gap_margin = longitudinal_gap(i, f, *map) - required_distance(15, 15, p);
    const bool safe = safe_following(i, f, *map, p);
    f.s += eps;
    const bool safe_up = safe_following(i, f, *map, p);
    if (safe != safe_up) CHECK(std::abs(gap_margin) < eps + 1e-9);
  }
}
