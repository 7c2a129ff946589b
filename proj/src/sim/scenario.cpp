#include "sim/scenario.hpp"

#include <array>
#include <cmath>

#include "core/error.hpp"
#include "data/json_util.hpp"

namespace progss {

const char* to_string(GoalCorner c) {
  switch (c) {
    case GoalCorner::BottomLeft: return "bl";
    case GoalCorner::BottomRight: return "br";
    case GoalCorner::TopLeft: return "tl";
    case GoalCorner::TopRight: return "tr";
  }
  return "bl";
}

std::optional<GoalCorner> parse_corner(const std::string& s) {
  if (s == "bl") return GoalCorner::BottomLeft;
  if (s == "br") return GoalCorner::BottomRight;
  if (s == "tl") return GoalCorner::TopLeft;
  if (s == "tr") return GoalCorner::TopRight;
  return std::nullopt;
}

Pose4 GoalSpec::target_pose(const SimParams& p) const {
  const Rect& t = p.packing_tote;
  double ix = p.corner_inset_x, iy = p.corner_inset_y;
  Pose4 pose;
  pose.z = 0.0;
  pose.yaw = 0.0;  // goal poses are axis aligned, snug orientation
  switch (corner) {
    case GoalCorner::BottomLeft:  pose.x = t.x0 + ix; pose.y = t.y0 + iy; break;
    case GoalCorner::BottomRight: pose.x = t.x1 - ix; pose.y = t.y0 + iy; break;
    case GoalCorner::TopLeft:     pose.x = t.x0 + ix; pose.y = t.y1 - iy; break;
    case GoalCorner::TopRight:    pose.x = t.x1 - ix; pose.y = t.y1 - iy; break;
  }
  return pose;
}

Rect GoalSpec::quadrant(const SimParams& p) const {
  const Rect& t = p.packing_tote;
  double mx = 0.5 * (t.x0 + t.x1), my = 0.5 * (t.y0 + t.y1);
  switch (corner) {
    case GoalCorner::BottomLeft:  return {t.x0, t.y0, mx, my};
    case GoalCorner::BottomRight: return {mx, t.y0, t.x1, my};
    case GoalCorner::TopLeft:     return {t.x0, my, mx, t.y1};
    case GoalCorner::TopRight:    return {mx, my, t.x1, t.y1};
  }
  return t;
}

Rect SpawnSpec::region(const SimParams& p) const {
  switch (kind) {
    case SpawnKind::Central:
      return {0.12, 0.09, 0.30, 0.21};
    case SpawnKind::Edge: {
      // band along the left picking-tote wall; footprint touches the wall
      double x = p.picking_tote.x0 + 0.5 * p.object_w;
      return {x, 0.08, x, 0.22};
    }
    case SpawnKind::Box:
      return box;
  }
  return box;
}

namespace {

struct SimField {
  const char* key;
  double SimParams::*member;
};

constexpr std::array<SimField, 20> kSimFields{{
    {"tick_travel", &SimParams::tick_travel},
    {"yaw_rate", &SimParams::yaw_rate},
    {"attach_radius", &SimParams::attach_radius},
    {"contact_eps", &SimParams::contact_eps},
    {"flip_depth", &SimParams::flip_depth},
    {"flip_sweep", &SimParams::flip_sweep},
    {"flip_nudge", &SimParams::flip_nudge},
    {"lift_height", &SimParams::lift_height},
    {"hover_z", &SimParams::hover_z},
    {"carry_z", &SimParams::carry_z},
    {"yaw_tol", &SimParams::yaw_tol},
    {"pos_tol", &SimParams::pos_tol},
    {"push_gain", &SimParams::push_gain},
    {"object_w", &SimParams::object_w},
    {"object_d", &SimParams::object_d},
    {"object_h", &SimParams::object_h},
    {"wall_height", &SimParams::wall_height},
    {"corner_inset_x", &SimParams::corner_inset_x},
    {"corner_inset_y", &SimParams::corner_inset_y},
    {"workspace_z", &SimParams::workspace_z},
}};

Pose4 pose_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    fail(ErrorCode::Validation, where + ": pose must be [x, y, z, yaw]");
  Pose4 p;
  p.x = j[0].get<double>();
  p.y = j[1].get<double>();
  p.z = j[2].get<double>();
  p.yaw = wrap_angle(j[3].get<double>());
  return p;
}

json pose_to_json(const Pose4& p) { return json::array({p.x, p.y, p.z, p.yaw}); }

const char* kind_name(DisturbanceKind k) {
  switch (k) {
    case DisturbanceKind::ResetObjectToWall: return "reset_object_to_wall";
    case DisturbanceKind::TeleportObject: return "teleport_object";
    case DisturbanceKind::DetachSuction: return "detach_suction";
  }
  return "reset_object_to_wall";
}

}  // namespace

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j = parse_json_text(text, "scenario");
  require_keys(j,
               {"schema_version", "name", "spawn", "goal", "horizon",
                "max_ticks", "hold_ticks", "noise_sigma", "thresholds",
                "hysteresis", "hysteresis_delta", "abort_stall_cycles",
                "abort_min_gain", "disturbances", "sim"},
               "scenario");
  int version = get_req<int>(j, "schema_version", "scenario");
  if (version != 1)
    fail(ErrorCode::Validation, "scenario: unsupported schema_version");

  ScenarioConfig sc;
  sc.name = get_or<std::string>(j, "name", sc.name);

  if (j.contains("sim")) {
    const json& js = j.at("sim");
    if (!js.is_object()) fail(ErrorCode::Validation, "scenario.sim: expected object");
    for (auto it = js.begin(); it != js.end(); ++it) {
      bool known = false;
      for (const auto& f : kSimFields) {
        if (it.key() == f.key) {
          sc.sim.*(f.member) = it.value().get<double>();
          known = true;
          break;
        }
      }
      if (!known)
        fail(ErrorCode::Validation, "scenario.sim: unknown key \"" + it.key() + "\"");
    }
  }

  if (j.contains("spawn")) {
    const json& js = j.at("spawn");
    require_keys(js, {"kind", "box", "yaw_range", "upright"}, "scenario.spawn");
    std::string kind = get_req<std::string>(js, "kind", "scenario.spawn");
    if (kind == "central") sc.spawn.kind = SpawnKind::Central;
    else if (kind == "edge") sc.spawn.kind = SpawnKind::Edge;
    else if (kind == "box") sc.spawn.kind = SpawnKind::Box;
    else fail(ErrorCode::Validation, "scenario.spawn.kind: expected central|edge|box");
    if (js.contains("box")) {
      const json& jb = js.at("box");
      if (!jb.is_array() || jb.size() != 4)
        fail(ErrorCode::Validation, "scenario.spawn.box: expected [x0, y0, x1, y1]");
      sc.spawn.box = {jb[0].get<double>(), jb[1].get<double>(),
                      jb[2].get<double>(), jb[3].get<double>()};
      if (sc.spawn.box.x0 > sc.spawn.box.x1 || sc.spawn.box.y0 > sc.spawn.box.y1)
        fail(ErrorCode::Validation, "scenario.spawn.box: empty rectangle");
    } else if (sc.spawn.kind == SpawnKind::Box) {
      fail(ErrorCode::Validation, "scenario.spawn: kind box requires a box");
    }
    if (js.contains("yaw_range")) {
      const json& jy = js.at("yaw_range");
      if (!jy.is_array() || jy.size() != 2)
        fail(ErrorCode::Validation, "scenario.spawn.yaw_range: expected [lo, hi]");
      sc.spawn.yaw_lo = jy[0].get<double>();
      sc.spawn.yaw_hi = jy[1].get<double>();
      if (sc.spawn.yaw_lo > sc.spawn.yaw_hi)
        fail(ErrorCode::Validation, "scenario.spawn.yaw_range: lo > hi");
    }
    sc.spawn.upright = get_or<bool>(js, "upright", false);
  }

  if (j.contains("goal")) {
    const json& jg = j.at("goal");
    require_keys(jg, {"corner", "source"}, "scenario.goal");
    std::string corner = get_req<std::string>(jg, "corner", "scenario.goal");
    auto parsed = parse_corner(corner);
    if (!parsed)
      fail(ErrorCode::Validation, "scenario.goal.corner: expected bl|br|tl|tr");
    sc.goal.corner = *parsed;
    std::string source = get_or<std::string>(jg, "source", "language");
    if (source == "language") sc.goal.source = GoalSource::Language;
    else if (source == "image_patch") sc.goal.source = GoalSource::ImagePatch;
    else fail(ErrorCode::Validation, "scenario.goal.source: expected language|image_patch");
  }

  sc.horizon = get_or<int>(j, "horizon", sc.horizon);
  sc.max_ticks = get_or<int>(j, "max_ticks", sc.max_ticks);
  sc.hold_ticks = get_or<int>(j, "hold_ticks", sc.hold_ticks);
  sc.noise_sigma = get_or<double>(j, "noise_sigma", sc.noise_sigma);
  if (j.contains("thresholds"))
    sc.thresholds = j.at("thresholds").get<std::vector<double>>();
  sc.hysteresis = get_or<bool>(j, "hysteresis", sc.hysteresis);
  sc.hysteresis_delta = get_or<double>(j, "hysteresis_delta", sc.hysteresis_delta);
  sc.abort_stall_cycles = get_or<int>(j, "abort_stall_cycles", sc.abort_stall_cycles);
  sc.abort_min_gain = get_or<double>(j, "abort_min_gain", sc.abort_min_gain);

  if (j.contains("disturbances")) {
    const json& jd = j.at("disturbances");
    if (!jd.is_array())
      fail(ErrorCode::Validation, "scenario.disturbances: expected array");
    for (const json& je : jd) {
      require_keys(je, {"kind", "at_tick", "pose"}, "scenario.disturbances[]");
      Disturbance d;
      std::string kind = get_req<std::string>(je, "kind", "scenario.disturbances[]");
      if (kind == "reset_object_to_wall") d.kind = DisturbanceKind::ResetObjectToWall;
      else if (kind == "teleport_object") d.kind = DisturbanceKind::TeleportObject;
      else if (kind == "detach_suction") d.kind = DisturbanceKind::DetachSuction;
      else fail(ErrorCode::Validation, "scenario.disturbances[].kind: unknown kind");
      d.at_tick = get_req<int64_t>(je, "at_tick", "scenario.disturbances[]");
      if (d.at_tick < 0)
        fail(ErrorCode::Validation, "scenario.disturbances[].at_tick: negative");
      if (d.kind == DisturbanceKind::TeleportObject) {
        if (!je.contains("pose"))
          fail(ErrorCode::Validation, "teleport_object requires a pose");
        d.pose = pose_from_json(je.at("pose"), "scenario.disturbances[].pose");
      } else if (je.contains("pose")) {
        fail(ErrorCode::Validation, "pose only applies to teleport_object");
      }
      sc.disturbances.push_back(d);
    }
  }

  // range checks
  if (sc.horizon < 1) fail(ErrorCode::Validation, "scenario.horizon must be >= 1");
  if (sc.max_ticks < sc.horizon)
    fail(ErrorCode::Validation, "scenario.max_ticks must be >= horizon");
  if (sc.hold_ticks < 0) fail(ErrorCode::Validation, "scenario.hold_ticks must be >= 0");
  if (sc.noise_sigma < 0.0)
    fail(ErrorCode::Validation, "scenario.noise_sigma must be >= 0");
  for (double t : sc.thresholds)
    if (t <= 0.0 || t > 1.0)
      fail(ErrorCode::Validation, "scenario.thresholds entries must be in (0, 1]");
  if (sc.hysteresis_delta < 0.0)
    fail(ErrorCode::Validation, "scenario.hysteresis_delta must be >= 0");
  if (sc.abort_stall_cycles < 1)
    fail(ErrorCode::Validation, "scenario.abort_stall_cycles must be >= 1");
  const SimParams& p = sc.sim;
  for (double v : {p.tick_travel, p.yaw_rate, p.attach_radius, p.contact_eps,
                   p.flip_depth, p.lift_height, p.object_w, p.object_d, p.object_h})
    if (v <= 0.0) fail(ErrorCode::Validation, "scenario.sim: lengths must be positive");
  return sc;
}

ScenarioConfig load_scenario(const std::string& path) {
  return scenario_from_json_text(load_text_file(path));
}

std::string scenario_to_json_text(const ScenarioConfig& sc) {
  json j;
  j["schema_version"] = 1;
  j["name"] = sc.name;
  json js;
  SimParams defaults;
  for (const auto& f : kSimFields) {
    if (sc.sim.*(f.member) != defaults.*(f.member))
      js[f.key] = sc.sim.*(f.member);
  }
  if (!js.is_null()) j["sim"] = js;
  json jspawn;
  jspawn["kind"] = sc.spawn.kind == SpawnKind::Central ? "central"
                   : sc.spawn.kind == SpawnKind::Edge ? "edge"
                                                      : "box";
  if (sc.spawn.kind == SpawnKind::Box)
    jspawn["box"] = json::array({sc.spawn.box.x0, sc.spawn.box.y0,
                                 sc.spawn.box.x1, sc.spawn.box.y1});
  jspawn["yaw_range"] = json::array({sc.spawn.yaw_lo, sc.spawn.yaw_hi});
  if (sc.spawn.upright) jspawn["upright"] = true;
  j["spawn"] = jspawn;
  j["goal"] = {{"corner", to_string(sc.goal.corner)},
               {"source", sc.goal.source == GoalSource::Language ? "language"
                                                                 : "image_patch"}};
  j["horizon"] = sc.horizon;
  j["max_ticks"] = sc.max_ticks;
  j["hold_ticks"] = sc.hold_ticks;
  j["noise_sigma"] = sc.noise_sigma;
  j["thresholds"] = sc.thresholds;
  j["hysteresis"] = sc.hysteresis;
  j["hysteresis_delta"] = sc.hysteresis_delta;
  j["abort_stall_cycles"] = sc.abort_stall_cycles;
  j["abort_min_gain"] = sc.abort_min_gain;
  if (!sc.disturbances.empty()) {
    json jd = json::array();
    for (const Disturbance& d : sc.disturbances) {
      json je;
      je["kind"] = kind_name(d.kind);
      je["at_tick"] = d.at_tick;
      if (d.kind == DisturbanceKind::TeleportObject) je["pose"] = pose_to_json(d.pose);
      jd.push_back(je);
    }
    j["disturbances"] = jd;
  }
  return j.dump(2) + "\n";
}

}  // namespace progss
