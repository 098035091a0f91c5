#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mrlsp/frontiers.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace mrlsp;
using testsup::grid_from;

TEST_CASE("extract: fully known map has no subgoals") {
  const PartialMap map = grid_from({"...", ".#.", "..."});
  CHECK(extract_subgoals(map).empty());
}

TEST_CASE("extract: single boundary column") {
  const PartialMap map = grid_from({".??",
                                    ".??",
                                    ".??"});
  const auto subgoals = extract_subgoals(map);
  REQUIRE(subgoals.size() == 1);
  CHECK(subgoals[0].cells == std::vector<int>{0, 3, 6});
  CHECK(subgoals[0].centroid == 3);  // middle member minimizes distance sum
}

TEST_CASE("extract: component count matches flood-fill oracle on random maps") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const KnownEnvironment env = testsup::random_env(rng, 32, 32, 0.3);
    const PartialMap map = testsup::random_partial(rng, env, 3, 5.0);
    const auto subgoals = extract_subgoals(map);
    CHECK(static_cast<int>(subgoals.size()) == oracles::frontier_component_count(map));
  }
}

TEST_CASE("frontier partition: members exactly the unknown-adjacent free cells, disjoint") {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const KnownEnvironment env = testsup::random_env(rng, 28, 28, 0.3);
    const PartialMap map = testsup::random_partial(rng, env, 2, 6.0);
    const auto subgoals = extract_subgoals(map);

    std::set<int> members;
    for (const Subgoal& s : subgoals)
      for (const int c : s.cells) {
        CHECK(!members.count(c));  // pairwise disjoint
        members.insert(c);
      }
    for (int y = 0; y < map.height; ++y)
      for (int x = 0; x < map.width; ++x) {
        bool frontier = false;
        if (map.at(x, y) == CellState::Free)
          for (int dy = -1; dy <= 1 && !frontier; ++dy)
            for (int dx = -1; dx <= 1; ++dx)
              if (map.in_bounds(x + dx, y + dy) &&
                  map.at(x + dx, y + dy) == CellState::Unknown) {
                frontier = true;
                break;
              }
        CHECK(static_cast<bool>(members.count(map.index(x, y))) == frontier);
      }
  }
}

TEST_CASE("extract: stable ids and ordering") {
  Rng rng(47);
  const KnownEnvironment env = testsup::random_env(rng);
  const PartialMap map = testsup::random_partial(rng, env);
  const auto a = extract_subgoals(map);
  const auto b = extract_subgoals(map);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].id == b[i].id);
  for (size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].id < a[i].id);
}

TEST_CASE("no new subgoals without newly revealed frontier cells") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const KnownEnvironment env = testsup::random_env(rng);
    PartialMap map = testsup::random_partial(rng, env, 2, 5.0);
    const auto before = extract_subgoals(map);
    std::set<SubgoalId> before_ids;
    for (const Subgoal& s : before) before_ids.insert(s.id);
    // an observation that repeats already-known cells reveals nothing new
    Observation obs;
    obs.origin = env.starts[0];
    for (int i = 0; i < map.size(); ++i)
      if (map.cells[i] != CellState::Unknown)
        obs.revealed.push_back({i, map.cells[i], map.semantic[i]});
    map = integrate(map, obs);
    const auto after = extract_subgoals(map);
    for (const Subgoal& s : after) CHECK(before_ids.count(s.id));
  }
}

TEST_CASE("distance model: corridor anchors") {
  const PartialMap map2 = grid_from({"########",
                                     "?......?",
                                     "########"});
  const auto sg2 = extract_subgoals(map2);
  REQUIRE(sg2.size() == 2);
  const Pose robot = map2.center(map2.index(1, 1));
  const Pose goal = map2.center(map2.index(6, 1));
  const DistanceModel m = build_distance_model(map2, {robot}, sg2, goal);
  // robot stands on one frontier centroid
  const double d0 = std::min(m.robot_to(0, sg2[0].id), m.robot_to(0, sg2[1].id));
  CHECK(d0 == 0.0);
  CHECK(m.between(sg2[0].id, sg2[1].id) == doctest::Approx(5.0));
  CHECK(m.between(sg2[0].id, sg2[0].id) == 0.0);
}

TEST_CASE("distance model entries equal fresh dijkstra runs on random maps") {
  Rng rng(59);
  for (int trial = 0; trial < 15; ++trial) {
    const KnownEnvironment env = testsup::random_env(rng, 28, 28, 0.25);
    const PartialMap map = testsup::random_partial(rng, env, 3, 6.0);
    const auto subgoals = extract_subgoals(map);
    if (subgoals.empty()) continue;
    std::vector<Pose> robots;
    for (int i = 0; i < map.size() && robots.size() < 2; ++i)
      if (map.cells[i] == CellState::Free) robots.push_back(map.center(i));
    if (robots.empty()) continue;
    const DistanceModel m = build_distance_model(map, robots, subgoals, env.goal);

    for (const Subgoal& s : subgoals) {
      const DistanceField f = dijkstra_field(map, {s.centroid}, UnknownPolicy::Occupied);
      for (size_t r = 0; r < robots.size(); ++r) {
        const double expect = f.at(map.cell_of(robots[r]));
        if (expect == kUnreachable) {
          CHECK(m.robot_to(static_cast<int>(r), s.id) == kUnreachable);
        } else {
          CHECK(m.robot_to(static_cast<int>(r), s.id) ==
                doctest::Approx(expect).epsilon(1e-9));
        }
      }
      for (const Subgoal& t : subgoals) {
        const double expect = f.at(t.centroid);
        if (expect == kUnreachable) {
          CHECK(m.between(s.id, t.id) == kUnreachable);
        } else {
          CHECK(m.between(s.id, t.id) == doctest::Approx(expect).epsilon(1e-9));
        }
      }
      const DistanceField o = dijkstra_field(map, {s.centroid}, UnknownPolicy::Free);
      const double expect = o.at(map.cell_of(env.goal));
      if (expect != kUnreachable)
        CHECK(m.to_goal_optimistic(s.id) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("distance model: symmetry and triangle inequality") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const KnownEnvironment env = testsup::random_env(rng, 24, 24, 0.25);
    const PartialMap map = testsup::random_partial(rng, env, 3, 6.0);
    const auto subgoals = extract_subgoals(map);
    if (subgoals.size() < 3) continue;
    const DistanceModel m = build_distance_model(map, {}, subgoals, env.goal);
    const int k = m.n_subgoals();
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const double ab = m.subgoal_to_subgoal[a][b];
        const double ba = m.subgoal_to_subgoal[b][a];
        if (ab == kUnreachable) {
          CHECK(ba == kUnreachable);
          continue;
        }
        CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
        for (int c = 0; c < k; ++c) {
          const double bc = m.subgoal_to_subgoal[b][c];
          const double ac = m.subgoal_to_subgoal[a][c];
          if (bc != kUnreachable) CHECK(ac <= ab + bc + 1e-6);
        }
      }
  }
}

TEST_CASE("select_top_k: small sets pass through, ranking matches exhaustive scoring") {
  Rng rng(67);
  const auto inst = testsup::random_instance(rng, 10, 2);
  std::vector<Subgoal> subgoals;
  for (const SubgoalId id : inst.ids) {
    Subgoal s;
    s.id = id;
    s.cells = {0};
    s.centroid = 0;
    subgoals.push_back(s);
  }
  CHECK(select_top_k(subgoals, 12, inst.model).size() == subgoals.size());

  const auto top = select_top_k(subgoals, 4, inst.model);
  REQUIRE(top.size() == 4);
  std::vector<std::pair<double, SubgoalId>> scored;
  for (const SubgoalId id : inst.ids) {
    double near = kUnreachable;
    for (int r = 0; r < inst.model.n_robots(); ++r)
      near = std::min(near, inst.model.robot_to(r, id));
    scored.push_back({near + inst.model.to_goal_optimistic(id), id});
  }
  std::sort(scored.begin(), scored.end());
  std::set<SubgoalId> expect;
  for (int i = 0; i < 4; ++i) expect.insert(scored[i].second);
  for (const Subgoal& s : top) CHECK(expect.count(s.id));
}
