#pragma once

#include <cstdint>

#include "sim/scenario.hpp"

namespace progss {

// suction is a relative command: +1 engage, -1 release, 0 no change
struct Action {
  Pose4 target{};
  int suction = 0;
};

struct ObjectState {
  Pose4 pose{};               // z is the base height; 0 means resting
  bool upright_against_wall = false;
  // flip bookkeeping, reset whenever the object settles flat or is moved
  double press_depth = 0.0;
  double sweep_dist = 0.0;
};

struct WorldState {
  int64_t tick = 0;
  Pose4 robot{};
  bool suction_on = false;
  bool attached = false;
  // grab transform in the tool frame, valid while attached
  Vec2 grab_xy{};
  double grab_dz = 0.0;
  double grab_dyaw = 0.0;
  ObjectState object{};
  bool last_rejected = false;   // previous action left the workspace and was dropped
  uint64_t seed = 0;            // spawn seed, for provenance
};

enum class ToteId { Picking = 0, Packing = 1, Neither = 2 };

struct Observation {
  int64_t tick = 0;
  Pose4 robot{};
  bool suction_on = false;
  Pose4 object{};
  double object_w = 0.0, object_d = 0.0, object_h = 0.0;
  bool upright = false;
  bool attached = false;
  bool contact = false;
  ToteId tote = ToteId::Neither;
};

WorldState spawn(const ScenarioConfig& scenario, uint64_t seed);

// rate-limited tool kinematics; step() and the planners share this exactly
Pose4 advance_tip(const Pose4& from, const Pose4& target, const SimParams& p);

// Pure transition. The returned state's last_rejected flag is set when the
// clamped move would leave the workspace; then only the tick advances.
WorldState step(const WorldState& w, const Action& a, const SimParams& p);

Observation observe(const WorldState& w, const SimParams& p);

void apply_disturbance(WorldState& w, const Disturbance& d, const SimParams& p);

bool tip_object_contact(const WorldState& w, const SimParams& p);

// the five task predicates; push splits into orientation and position
bool flip_done(const WorldState& w, const SimParams& p);
bool pick_done(const WorldState& w, const SimParams& p);
bool pack_done(const WorldState& w, const SimParams& p, const GoalSpec& goal);
bool push_orientation_done(const WorldState& w, const SimParams& p, const GoalSpec& goal);
bool push_position_done(const WorldState& w, const SimParams& p, const GoalSpec& goal);

// object top center, where suction grabs
inline Pose4 object_top(const WorldState& w, const SimParams& p) {
  double h = w.object.upright_against_wall ? p.upright_height() : p.object_h;
  Pose4 t = w.object.pose;
  t.z = w.object.pose.z + h;
  return t;
}

}  // namespace progss
