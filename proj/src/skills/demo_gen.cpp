#include "skills/demo_gen.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace progss {

namespace {

bool object_moved(const WorldState& a, const WorldState& b) {
  const Pose4& x = a.object.pose;
  const Pose4& y = b.object.pose;
  double d = std::max({std::abs(y.x - x.x), std::abs(y.y - x.y),
                       std::abs(y.z - x.z),
                       0.1 * std::abs(wrap_angle(y.yaw - x.yaw))});
  return d > 1e-3 ||
         a.object.upright_against_wall != b.object.upright_against_wall;
}

bool role_postcondition(TaskRole role, const WorldState& w,
                        const SimParams& p, const GoalSpec& goal) {
  switch (role) {
    case TaskRole::Flip: return flip_done(w, p);
    case TaskRole::Pick: return pick_done(w, p);
    case TaskRole::Pack: return pack_done(w, p, goal);
    case TaskRole::Push:
      return push_orientation_done(w, p, goal) &&
             push_position_done(w, p, goal);
    case TaskRole::None: return true;
  }
  return true;
}

}  // namespace

Demonstration generate_demo(const PolicyBank& bank,
                            const std::vector<int>& ordering,
                            const ScenarioConfig& sc, uint64_t seed) {
  if (ordering.empty())
    fail(ErrorCode::Validation, "ordering must not be empty");
  for (size_t i = 0; i < ordering.size(); ++i) {
    int s = ordering[i];
    if (s < 0 || s >= static_cast<int>(bank.size()))
      fail(ErrorCode::Validation, "ordering references unknown skill id");
    for (size_t j = 0; j < i; ++j)
      if (ordering[j] == s)
        fail(ErrorCode::Validation, "ordering repeats a skill");
  }

  const SimParams& p = sc.sim;
  Demonstration demo;
  demo.ordering = ordering;
  demo.seed = seed;
  demo.sigma = sc.noise_sigma;

  WorldState world = spawn(sc, seed);
  int64_t t = 0;
  uint64_t chunk_counter = 0;

  auto push_step = [&](const Action& act, const WorldState& next, int skill,
                       int segment) {
    demo.steps.push_back({t, act, observe(next, p), skill, segment});
    ++t;
    if (t > sc.max_ticks)
      fail(ErrorCode::InfeasibleOrdering,
           "demonstration exceeded the tick budget");
  };

  for (int skill : ordering) {
    const SkillSpec& spec = bank.skills[skill];
    for (int seg = 0; seg < spec.segments; ++seg) {
      bool seg_done = false;
      // arm the completion check only once the chunk has had visible effect,
      // so preconditions that already hold do not truncate the demonstration
      bool armed = false;
      for (int attempt = 0; attempt < 3 && !seg_done; ++attempt) {
        Chunk chunk =
            plan_chunk(bank, skill, seg, observe(world, p), sc.goal, p,
                       sc.horizon, sc.noise_sigma,
                       mix_seed(seed, 0x1000 + chunk_counter++));
        for (int i = 0; i < sc.horizon; ++i) {
          const Action& act = chunk.actions[i];
          WorldState next = step(world, act, p);
          push_step(act, next, skill, seg);
          if (object_moved(world, next) || act.suction != 0) armed = true;
          world = next;
          if (i + 1 >= chunk.plan_len) armed = true;
          if (armed && bank.done[skill](world, sc.goal, p, seg)) {
            seg_done = true;
            break;
          }
        }
      }
      if (!seg_done)
        fail(ErrorCode::InfeasibleOrdering,
             "skill '" + spec.name + "' did not complete segment " +
                 std::to_string(seg) + " in three chunks");
    }
    // vertical retreat out of the contact zone before the next skill plans
    double exit_z = safe_transit_z(p) + 0.015;
    Pose4 up{world.robot.x, world.robot.y, exit_z, world.robot.yaw};
    while (world.robot.z < exit_z - 1e-12) {
      Action act{up, 0};
      WorldState next = step(world, act, p);
      push_step(act, next, skill, spec.segments - 1);
      world = next;
    }
  }

  for (int skill : ordering)
    if (!role_postcondition(bank.skills[skill].role, world, p, sc.goal))
      fail(ErrorCode::InfeasibleOrdering,
           "postcondition of skill '" + bank.skills[skill].name +
               "' does not hold at the end of the demonstration");

  demo.windows.resize(ordering.size());
  for (size_t k = 0; k < ordering.size(); ++k) {
    int s = ordering[k];
    GtWindow& w = demo.windows[k];
    for (size_t i = 0; i < demo.steps.size(); ++i) {
      if (demo.steps[i].skill != s || !demo.steps[i].obs.contact) continue;
      if (w.start < 0) w.start = static_cast<int64_t>(i);
      w.end = static_cast<int64_t>(i);
    }
    if (w.start < 0)
      fail(ErrorCode::NoContactFound,
           "no contact recorded for skill '" + bank.skills[s].name + "'");
  }
  return demo;
}

}  // namespace progss
