#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/geom.hpp"

namespace progss {

// All tunable simulator constants. Desk scale: meters, radians, ticks.
struct SimParams {
  double tick_travel = 0.01;      // max tool-tip travel per tick
  double yaw_rate = 0.05;         // max tool yaw change per tick
  double attach_radius = 0.02;    // suction grab radius around the object top
  double contact_eps = 0.02;      // tip-to-object distance counted as contact
  double flip_depth = 0.03;       // accumulated press depth that tips the object
  double flip_sweep = 0.015;      // lateral stroke at depth required to finish a flip
  double flip_nudge = 0.05;       // how far the object settles inward when tipped
  double lift_height = 0.10;      // object z that counts as lifted
  double hover_z = 0.15;          // transit height for an empty tool
  double carry_z = 0.16;          // transit height while carrying
  double yaw_tol = 0.15;          // orientation postcondition tolerance
  double pos_tol = 0.02;          // position postcondition tolerance
  double push_gain = 100.0;       // rad per m^2 of (lever x stroke) when pushing
  double object_w = 0.12;         // object footprint, long side
  double object_d = 0.06;         // object footprint, short side
  double object_h = 0.04;         // object height lying flat
  double wall_height = 0.10;
  double corner_inset_x = 0.06;   // goal pose offset from the corner walls
  double corner_inset_y = 0.04;

  // fixed bench layout: two totes side by side with a gap
  Rect picking_tote{0.0, 0.0, 0.40, 0.30};
  Rect packing_tote{0.50, 0.0, 0.90, 0.30};
  Rect workspace{-0.05, -0.05, 0.95, 0.35};
  double workspace_z = 0.30;

  Pose4 home_pose{0.45, 0.15, 0.20, 0.0};

  double upright_height() const {
    return std::max({object_w, object_d, object_h});
  }
};

enum class GoalCorner { BottomLeft, BottomRight, TopLeft, TopRight };
enum class GoalSource { Language, ImagePatch };

const char* to_string(GoalCorner c);
std::optional<GoalCorner> parse_corner(const std::string& s);

struct GoalSpec {
  GoalCorner corner = GoalCorner::BottomLeft;
  GoalSource source = GoalSource::Language;

  // object-center pose the task drives toward; always inside the packing tote
  Pose4 target_pose(const SimParams& p) const;
  // quarter of the packing tote adjacent to the corner
  Rect quadrant(const SimParams& p) const;
};

enum class SpawnKind { Central, Edge, Box };

struct SpawnSpec {
  SpawnKind kind = SpawnKind::Central;
  // only read for kind == Box
  Rect box{0.12, 0.09, 0.30, 0.21};
  double yaw_lo = -0.5;
  double yaw_hi = 0.5;
  bool upright = false;

  Rect region(const SimParams& p) const;
  bool spawns_upright() const {
    return kind == SpawnKind::Edge || (kind == SpawnKind::Box && upright);
  }
};

enum class DisturbanceKind { ResetObjectToWall, TeleportObject, DetachSuction };

struct Disturbance {
  DisturbanceKind kind = DisturbanceKind::ResetObjectToWall;
  int64_t at_tick = 0;      // fires after the step of this tick
  Pose4 pose{};             // TeleportObject target
};

struct ScenarioConfig {
  std::string name = "default";
  SimParams sim{};
  SpawnSpec spawn{};
  GoalSpec goal{};
  int horizon = 50;             // decision interval and chunk length, ticks
  int max_ticks = 3000;
  int hold_ticks = 100;         // settle window after Complete
  double noise_sigma = 0.0;     // actuation noise on planned targets, meters
  std::vector<double> thresholds{0.9, 0.9, 0.9, 0.9};  // theta per skill id
  bool hysteresis = true;
  double hysteresis_delta = 0.05;
  int abort_stall_cycles = 3;   // same selection with no gain for more cycles aborts
  double abort_min_gain = 0.05;
  std::vector<Disturbance> disturbances{};

  double threshold_for(size_t skill) const {
    return skill < thresholds.size() ? thresholds[skill] : 0.9;
  }
};

// Strict JSON load: unknown keys anywhere are errors, enums validated,
// ranges checked. Throws Error{Validation|Io}.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioConfig& sc);

}  // namespace progss
