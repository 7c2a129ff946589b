#include "skills/bank.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace progss {

namespace {

Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

double clear_z(const SimParams& p) { return safe_transit_z(p); }

double stroke_z(const SimParams& p) { return 0.5 * p.object_h; }

Vec2 toward_picking_center(Vec2 from, const SimParams& p) {
  Vec2 n = normalized(p.picking_tote.center() - from);
  if (norm(n) < 0.5) return {1.0, 0.0};
  return n;
}

Pose4 at(Vec2 xy, double z, double yaw) { return {xy.x, xy.y, z, yaw}; }

std::vector<Waypoint> plan_flip(const Observation& obs, const GoalSpec&,
                                const SimParams& p, int) {
  Vec2 o = obs.object.xy();
  Vec2 d = toward_picking_center(o, p);
  double yaw = obs.robot.yaw;
  double sweep = p.flip_sweep + 0.01;
  Vec2 end = o + sweep * d;
  return {
      {at(o, p.hover_z, yaw)},
      {at(o, stroke_z(p), yaw)},        // press; on a standing object this
      {at(end, stroke_z(p), yaw)},      // accumulates depth, then the sweep
      {at(end, p.hover_z, yaw)},        // tips it flat
  };
}

std::vector<Waypoint> plan_grab(const Observation& obs, const SimParams& p) {
  Vec2 o = obs.object.xy();
  double yaw = obs.robot.yaw;
  double grab_z = obs.object.z + obs.object_h + 0.001;
  return {
      {at(o, p.hover_z, yaw)},
      {at(o, grab_z, yaw)},
      {at(o, grab_z, yaw), +1, 1},
      {at(o, p.carry_z, yaw)},
  };
}

std::vector<Waypoint> plan_pick(const Observation& obs, const GoalSpec&,
                                const SimParams& p, int) {
  if (obs.attached)
    return {{at(obs.robot.xy(), p.carry_z, obs.robot.yaw)}};
  return plan_grab(obs, p);
}

std::vector<Waypoint> plan_pack(const Observation& obs, const GoalSpec& goal,
                                const SimParams& p, int) {
  double yaw = obs.robot.yaw;
  std::vector<Waypoint> wps;
  if (!obs.attached) wps = plan_grab(obs, p);

  Pose4 t = goal.target_pose(p);
  Vec2 c = p.packing_tote.center();
  // drop short of the corner, toward the tote center; pushing finishes the job
  Vec2 drop{t.x + 0.05 * (c.x > t.x ? 1.0 : -1.0),
            t.y + 0.05 * (c.y > t.y ? 1.0 : -1.0)};
  double release_z = p.object_h + 0.006;
  Vec2 here = obs.attached ? obs.robot.xy() : obs.object.xy();
  wps.push_back({at(here, p.carry_z, yaw)});
  wps.push_back({at(drop, p.carry_z, yaw)});
  wps.push_back({at(drop, release_z, yaw)});
  wps.push_back({at(drop, release_z, yaw), -1, 1});
  wps.push_back({at(drop, p.hover_z, yaw)});
  return wps;
}

std::vector<Waypoint> plan_release_here(const Observation& obs,
                                        const SimParams& p) {
  double yaw = obs.robot.yaw;
  Vec2 here = obs.robot.xy();
  double release_z = p.object_h + 0.006;
  return {
      {at(here, release_z, yaw)},
      {at(here, release_z, yaw), -1, 1},
      {at(here, clear_z(p), yaw)},
  };
}

// Tangential corner strokes. The engage factor must leave the first stroke
// tick inside the footprint (0.65 of the corner does; past 0.70 the tick
// exits through the short side and the push never starts); once a push tick
// lands, the tip's offset rides with the object and the rest of the stroke
// cannot disengage. Strokes alternate between opposite corners so the
// translation they drag in cancels while the rotation adds up, and the
// planner advances both its yaw and its center estimate stroke over stroke.
std::vector<Waypoint> plan_push_orientation(const Observation& obs,
                                            const GoalSpec& goal,
                                            const SimParams& p, int) {
  if (obs.attached) return plan_release_here(obs, p);
  double yaw_t = obs.robot.yaw;
  double hw = 0.5 * obs.object_w, hd = 0.5 * obs.object_d;
  double goal_yaw = goal.target_pose(p).yaw;
  Vec2 pred_c = obs.object.xy();
  double pred_yaw = obs.object.yaw;
  std::vector<Waypoint> wps;
  for (int i = 0; i < 4; ++i) {
    double e = wrap_angle(goal_yaw - pred_yaw);
    if (std::abs(e) <= 0.6 * p.yaw_tol && i > 0) break;
    double sgn = e >= 0.0 ? 1.0 : -1.0;
    Vec2 corner{i % 2 == 0 ? hw : -hw, i % 2 == 0 ? hd : -hd};
    Vec2 off = rotated(corner, pred_yaw);
    Vec2 engage = pred_c + 0.65 * off;
    Vec2 tangent = sgn * normalized(perp(off));
    double lever = 0.65 * norm(corner);
    double s = std::clamp(std::abs(e) / (p.push_gain * lever), 0.006, 0.04);
    Vec2 a = engage - 0.5 * s * tangent;
    Vec2 b = engage + 0.5 * s * tangent;
    wps.push_back({at(a, clear_z(p), yaw_t)});
    wps.push_back({at(a, stroke_z(p), yaw_t)});
    wps.push_back({at(b, stroke_z(p), yaw_t)});
    wps.push_back({at(b, clear_z(p), yaw_t)});
    // engaged-stroke response model, only used to chain strokes
    pred_yaw = wrap_angle(pred_yaw + sgn * p.push_gain * lever * s);
    pred_c = pred_c + s * tangent;
  }
  if (wps.empty()) {
    // already aligned: a minimal stroke still demonstrates the segment
    Vec2 off = rotated(Vec2{hw, hd}, pred_yaw);
    Vec2 engage = pred_c + 0.65 * off;
    Vec2 tangent = normalized(perp(off));
    wps.push_back({at(engage - 0.003 * tangent, clear_z(p), yaw_t)});
    wps.push_back({at(engage - 0.003 * tangent, stroke_z(p), yaw_t)});
    wps.push_back({at(engage + 0.003 * tangent, stroke_z(p), yaw_t)});
    wps.push_back({at(engage + 0.003 * tangent, clear_z(p), yaw_t)});
  }
  return wps;
}

// Straight push through the back face: the tip enters the footprint from the
// target-opposite side and the object rides ahead of it, so the lever stays
// parallel to the motion and no torque builds up.
std::vector<Waypoint> plan_push_position(const Observation& obs,
                                         const GoalSpec& goal,
                                         const SimParams& p, int) {
  if (obs.attached) return plan_release_here(obs, p);
  double yaw_t = obs.robot.yaw;
  Pose4 t = goal.target_pose(p);
  Vec2 center = obs.object.xy();
  Vec2 d = t.xy() - center;
  double dist = norm(d);
  double hw = 0.5 * obs.object_w, hd = 0.5 * obs.object_d;
  if (dist < 1e-6) {
    Vec2 off = rotated(Vec2{hw, 0.0}, obs.object.yaw);
    return {{at(center - 2.0 * off, clear_z(p), yaw_t)}};
  }
  Vec2 u = normalized(d);
  Vec2 ax{std::cos(obs.object.yaw), std::sin(obs.object.yaw)};
  Vec2 ay = perp(ax);
  double ext = hw * std::abs(dot(u, ax)) + hd * std::abs(dot(u, ay));
  Vec2 start = center - 0.85 * ext * u;
  Vec2 end = start + (dist + 0.015) * u;
  return {
      {at(start, clear_z(p), yaw_t)},
      {at(start, stroke_z(p), yaw_t)},
      {at(end, stroke_z(p), yaw_t)},
      {at(end, clear_z(p), yaw_t)},
  };
}

std::vector<Waypoint> plan_probe(const Observation& obs, const GoalSpec&,
                                 const SimParams& p, int) {
  Vec2 o = obs.object.xy();
  double yaw = obs.robot.yaw;
  return {
      {at(o, p.hover_z, yaw)},
      {at(o, obs.object_h + 0.03, yaw)},
      {at(o, p.hover_z, yaw)},
  };
}

bool done_flip(const WorldState& w, const GoalSpec&, const SimParams& p, int) {
  return flip_done(w, p);
}
bool done_pick(const WorldState& w, const GoalSpec&, const SimParams& p, int) {
  return w.attached && w.object.pose.z >= p.lift_height;
}
bool done_pack(const WorldState& w, const GoalSpec& g, const SimParams& p, int) {
  return !w.attached && pack_done(w, p, g);
}
bool done_push(const WorldState& w, const GoalSpec& g, const SimParams& p,
               int segment) {
  if (segment == 0) {
    double err = wrap_angle(w.object.pose.yaw - g.target_pose(p).yaw);
    return std::abs(err) <= 0.8 * p.yaw_tol;
  }
  return planar_dist(w.object.pose, g.target_pose(p)) <= 0.75 * p.pos_tol;
}

}  // namespace

const SkillSpec* PolicyBank::find(const std::string& name) const {
  for (const SkillSpec& s : skills)
    if (s.name == name) return &s;
  return nullptr;
}

PolicyBank default_bank() {
  PolicyBank bank;
  register_skill(bank, {0, "flip", 0.9, 1, TaskRole::Flip}, plan_flip, done_flip);
  register_skill(bank, {0, "pick", 0.9, 1, TaskRole::Pick}, plan_pick, done_pick);
  register_skill(bank, {0, "pack", 0.9, 1, TaskRole::Pack}, plan_pack, done_pack);
  register_skill(bank, {0, "push", 0.9, 2, TaskRole::Push},
                 [](const Observation& o, const GoalSpec& g, const SimParams& p,
                    int seg) {
                   return seg == 0 ? plan_push_orientation(o, g, p, seg)
                                   : plan_push_position(o, g, p, seg);
                 },
                 done_push);
  return bank;
}

int register_skill(PolicyBank& bank, SkillSpec spec, PlannerFn planner,
                   DoneFn done) {
  if (spec.segments < 1)
    fail(ErrorCode::Validation, "skill must have at least one segment");
  if (spec.name.empty())
    fail(ErrorCode::Validation, "skill needs a name");
  if (bank.find(spec.name))
    fail(ErrorCode::Validation, "duplicate skill name: " + spec.name);
  spec.id = static_cast<int>(bank.skills.size());
  bank.skills.push_back(spec);
  bank.planners.push_back(std::move(planner));
  bank.done.push_back(std::move(done));
  return spec.id;
}

int register_probe_skill(PolicyBank& bank) {
  return register_skill(
      bank, {0, "probe", 0.9, 1, TaskRole::None}, plan_probe,
      [](const WorldState&, const GoalSpec&, const SimParams&, int) {
        return true;
      });
}

Chunk plan_chunk(const PolicyBank& bank, int skill, int segment,
                 const Observation& obs, const GoalSpec& goal,
                 const SimParams& p, int horizon, double sigma, uint64_t seed) {
  if (skill < 0 || skill >= static_cast<int>(bank.size()))
    fail(ErrorCode::Validation, "plan_chunk: unknown skill id");
  if (segment < 0 || segment >= bank.skills[skill].segments)
    fail(ErrorCode::Validation, "plan_chunk: segment out of range");
  if (horizon < 1) fail(ErrorCode::Validation, "plan_chunk: horizon < 1");

  std::vector<Waypoint> wps = bank.planners[skill](obs, goal, p, segment);
  // leave any contact zone straight up before moving sideways, so replanning
  // from a low tip never drags the object on the way out
  if (obs.robot.z < clear_z(p) - 1e-9) {
    Waypoint exit{{obs.robot.x, obs.robot.y, clear_z(p), obs.robot.yaw}, 0, 0};
    wps.insert(wps.begin(), exit);
  }

  std::vector<Action> out;
  out.reserve(horizon);
  Pose4 tip = obs.robot;
  for (const Waypoint& wp : wps) {
    while (static_cast<int>(out.size()) < horizon &&
           (tip.x != wp.target.x || tip.y != wp.target.y ||
            tip.z != wp.target.z || tip.yaw != wp.target.yaw)) {
      tip = advance_tip(tip, wp.target, p);
      out.push_back({wp.target, 0});
    }
    if (wp.suction != 0 && static_cast<int>(out.size()) < horizon)
      out.push_back({wp.target, wp.suction});
    for (int i = 0; i < wp.dwell && static_cast<int>(out.size()) < horizon; ++i)
      out.push_back({wp.target, 0});
    if (static_cast<int>(out.size()) >= horizon) break;
  }
  int plan_len = static_cast<int>(out.size());
  Pose4 hold = out.empty() ? obs.robot : out.back().target;
  while (static_cast<int>(out.size()) < horizon) out.push_back({hold, 0});

  if (sigma > 0.0) {
    Rng rng(mix_seed(seed, 0xC0FFEEULL));
    for (Action& a : out) {
      a.target.x += sigma * rng.gaussian();
      a.target.y += sigma * rng.gaussian();
      a.target.z += sigma * rng.gaussian();
    }
  }
  return {std::move(out), plan_len};
}

}  // namespace progss
