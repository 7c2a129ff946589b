#include "sim/world.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace progss {

namespace {

// AABB half extents of the rotated footprint
Vec2 footprint_extents(double yaw, const SimParams& p) {
  double c = std::abs(std::cos(yaw)), s = std::abs(std::sin(yaw));
  return {0.5 * (p.object_w * c + p.object_d * s),
          0.5 * (p.object_w * s + p.object_d * c)};
}

// Totes act as walls for an object sliding on the floor: the footprint may
// not cross out of the tote that holds the center.
void clamp_to_walls(ObjectState& obj, const SimParams& p) {
  if (obj.pose.z > 1e-9) return;
  Vec2 c = obj.pose.xy();
  const Rect* tote = nullptr;
  if (p.picking_tote.contains(c)) tote = &p.picking_tote;
  else if (p.packing_tote.contains(c)) tote = &p.packing_tote;
  Vec2 e = footprint_extents(obj.pose.yaw, p);
  Rect bounds = tote ? *tote : p.workspace;
  double lo_x = bounds.x0 + e.x, hi_x = bounds.x1 - e.x;
  double lo_y = bounds.y0 + e.y, hi_y = bounds.y1 - e.y;
  if (lo_x <= hi_x) obj.pose.x = std::clamp(obj.pose.x, lo_x, hi_x);
  if (lo_y <= hi_y) obj.pose.y = std::clamp(obj.pose.y, lo_y, hi_y);
}

Vec2 inward_dir(Vec2 from, const SimParams& p) {
  Vec2 d = p.picking_tote.center() - from;
  Vec2 n = normalized(d);
  if (norm(n) < 0.5) return {1.0, 0.0};
  return n;
}

bool in_workspace(const Pose4& pose, const SimParams& p) {
  return p.workspace.contains(pose.xy()) && pose.z >= 0.0 &&
         pose.z <= p.workspace_z;
}

}  // namespace

WorldState spawn(const ScenarioConfig& scenario, uint64_t seed) {
  const SimParams& p = scenario.sim;
  Rng rng(mix_seed(seed, 0xA11CEULL));
  Rect region = scenario.spawn.region(p);
  WorldState w;
  w.seed = seed;
  w.robot = p.home_pose;
  w.object.pose.x = rng.uniform(region.x0, region.x1);
  w.object.pose.y = rng.uniform(region.y0, region.y1);
  double yaw = rng.uniform(scenario.spawn.yaw_lo, scenario.spawn.yaw_hi);
  w.object.pose.yaw = scenario.spawn.kind == SpawnKind::Edge ? 0.0 : wrap_angle(yaw);
  w.object.pose.z = 0.0;
  w.object.upright_against_wall = scenario.spawn.spawns_upright();
  return w;
}

Pose4 advance_tip(const Pose4& from, const Pose4& target, const SimParams& p) {
  double dx = target.x - from.x, dy = target.y - from.y, dz = target.z - from.z;
  double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (dist > p.tick_travel) {
    double s = p.tick_travel / dist;
    dx *= s; dy *= s; dz *= s;
  }
  double dyaw = wrap_angle(target.yaw - from.yaw);
  dyaw = std::clamp(dyaw, -p.yaw_rate, p.yaw_rate);
  return {from.x + dx, from.y + dy, from.z + dz, wrap_angle(from.yaw + dyaw)};
}

WorldState step(const WorldState& prev, const Action& a, const SimParams& p) {
  WorldState w = prev;
  w.tick = prev.tick + 1;
  w.last_rejected = false;

  // clamped motion toward the absolute target, shared with the planners
  Pose4 cand = advance_tip(prev.robot, a.target, p);

  if (!in_workspace(cand, p)) {
    w.last_rejected = true;
    return w;
  }
  w.robot = cand;
  Vec2 delta{cand.x - prev.robot.x, cand.y - prev.robot.y};
  double dz_step = cand.z - prev.robot.z;

  if (w.attached) {
    // rigid follow in the tool frame
    Vec2 off = rotated(w.grab_xy, cand.yaw);
    w.object.pose.x = cand.x + off.x;
    w.object.pose.y = cand.y + off.y;
    w.object.pose.z = std::max(0.0, cand.z + w.grab_dz);
    w.object.pose.yaw = wrap_angle(cand.yaw + w.grab_dyaw);
  } else if (w.object.upright_against_wall) {
    // A standing object only reacts to a deliberate press-and-sweep stroke:
    // accumulated downward travel past flip_depth, then lateral travel past
    // flip_sweep, tips it flat and it settles inward off the wall.
    double h_up = p.upright_height();
    bool in_zone = cand.z < h_up &&
                   point_in_footprint(cand.xy(), w.object.pose.xy(),
                                      w.object.pose.yaw, 0.5 * p.object_w,
                                      0.5 * p.object_d);
    if (in_zone) {
      if (dz_step < 0.0) w.object.press_depth += -dz_step;
      if (w.object.press_depth >= p.flip_depth)
        w.object.sweep_dist += norm(delta);
      if (w.object.press_depth >= p.flip_depth &&
          w.object.sweep_dist >= p.flip_sweep) {
        w.object.upright_against_wall = false;
        w.object.press_depth = 0.0;
        w.object.sweep_dist = 0.0;
        Vec2 d = inward_dir(w.object.pose.xy(), p);
        w.object.pose.x += p.flip_nudge * d.x;
        w.object.pose.y += p.flip_nudge * d.y;
        clamp_to_walls(w.object, p);
      }
    }
  } else if (w.object.pose.z <= 1e-9 && cand.z < w.object.pose.z + p.object_h &&
             point_in_footprint(cand.xy(), w.object.pose.xy(),
                                w.object.pose.yaw, 0.5 * p.object_w,
                                0.5 * p.object_d) &&
             norm(delta) > 0.0) {
    // kinematic push: the object translates with the tip and rotates about
    // the contact point in proportion to the tip's offset from its center
    w.object.pose.x += delta.x;
    w.object.pose.y += delta.y;
    Vec2 lever = cand.xy() - w.object.pose.xy();
    double dtheta = p.push_gain * cross(lever, delta);
    if (dtheta != 0.0) {
      Vec2 arm = w.object.pose.xy() - cand.xy();
      Vec2 rotated_arm = rotated(arm, dtheta);
      w.object.pose.x = cand.x + rotated_arm.x;
      w.object.pose.y = cand.y + rotated_arm.y;
      w.object.pose.yaw = wrap_angle(w.object.pose.yaw + dtheta);
    }
    clamp_to_walls(w.object, p);
  }

  if (a.suction == -1) {
    w.suction_on = false;
    if (w.attached) {
      w.attached = false;
      w.object.pose.z = 0.0;
    }
  } else if (a.suction == +1) {
    w.suction_on = true;
    if (!w.attached) {
      Pose4 top = object_top(w, p);
      double d = std::sqrt((cand.x - top.x) * (cand.x - top.x) +
                           (cand.y - top.y) * (cand.y - top.y) +
                           (cand.z - top.z) * (cand.z - top.z));
      if (d <= p.attach_radius) {
        w.attached = true;
        // lifting a leaning object off the wall stands in for a side grasp
        if (w.object.upright_against_wall) {
          w.object.upright_against_wall = false;
          w.object.press_depth = 0.0;
          w.object.sweep_dist = 0.0;
        }
        Vec2 off = w.object.pose.xy() - cand.xy();
        w.grab_xy = rotated(off, -cand.yaw);
        w.grab_dz = w.object.pose.z - cand.z;
        w.grab_dyaw = wrap_angle(w.object.pose.yaw - cand.yaw);
      }
    }
  }
  return w;
}

bool tip_object_contact(const WorldState& w, const SimParams& p) {
  if (w.attached) return true;
  double h = w.object.upright_against_wall ? p.upright_height() : p.object_h;
  double d = point_box_distance(w.robot.x, w.robot.y,
                                w.robot.z - w.object.pose.z,
                                w.object.pose.xy(), w.object.pose.yaw,
                                0.5 * p.object_w, 0.5 * p.object_d, h);
  return d <= p.contact_eps;
}

Observation observe(const WorldState& w, const SimParams& p) {
  Observation o;
  o.tick = w.tick;
  o.robot = w.robot;
  o.suction_on = w.suction_on;
  o.object = w.object.pose;
  o.object_w = p.object_w;
  o.object_d = p.object_d;
  o.object_h = p.object_h;
  o.upright = w.object.upright_against_wall;
  o.attached = w.attached;
  o.contact = tip_object_contact(w, p);
  Vec2 c = w.object.pose.xy();
  o.tote = p.picking_tote.contains(c)   ? ToteId::Picking
           : p.packing_tote.contains(c) ? ToteId::Packing
                                        : ToteId::Neither;
  return o;
}

void apply_disturbance(WorldState& w, const Disturbance& d, const SimParams& p) {
  switch (d.kind) {
    case DisturbanceKind::ResetObjectToWall: {
      w.attached = false;
      w.object.pose.x = p.picking_tote.x0 + 0.5 * p.object_w;
      w.object.pose.y = std::clamp(w.object.pose.y, 0.08, 0.22);
      w.object.pose.z = 0.0;
      w.object.pose.yaw = 0.0;
      w.object.upright_against_wall = true;
      w.object.press_depth = 0.0;
      w.object.sweep_dist = 0.0;
      break;
    }
    case DisturbanceKind::TeleportObject: {
      w.attached = false;
      w.object.pose = d.pose;
      w.object.pose.z = std::max(0.0, d.pose.z);
      w.object.pose.yaw = wrap_angle(d.pose.yaw);
      w.object.upright_against_wall = false;
      w.object.press_depth = 0.0;
      w.object.sweep_dist = 0.0;
      break;
    }
    case DisturbanceKind::DetachSuction: {
      w.attached = false;
      w.suction_on = false;
      w.object.pose.z = 0.0;
      break;
    }
  }
}

bool flip_done(const WorldState& w, const SimParams&) {
  return !w.object.upright_against_wall;
}

bool pick_done(const WorldState& w, const SimParams& p) {
  if (w.attached && w.object.pose.z >= p.lift_height) return true;
  return !p.picking_tote.contains(w.object.pose.xy());
}

bool pack_done(const WorldState& w, const SimParams& p, const GoalSpec& goal) {
  return goal.quadrant(p).contains(w.object.pose.xy());
}

bool push_orientation_done(const WorldState& w, const SimParams& p,
                           const GoalSpec& goal) {
  double err = wrap_angle(w.object.pose.yaw - goal.target_pose(p).yaw);
  return std::abs(err) <= p.yaw_tol;
}

bool push_position_done(const WorldState& w, const SimParams& p,
                        const GoalSpec& goal) {
  return planar_dist(w.object.pose, goal.target_pose(p)) <= p.pos_tol;
}

}  // namespace progss
