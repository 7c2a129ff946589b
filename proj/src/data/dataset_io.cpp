#include "data/dataset_io.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "core/error.hpp"
#include "data/json_util.hpp"

namespace progss {

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

json pose_to_json(const Pose4& p) {
  return json::array({p.x, p.y, p.z, p.yaw});
}

Pose4 pose_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 4)
    fail(ErrorCode::Validation,
         std::string(where) + ": pose must be [x, y, z, yaw]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

const char* tote_to_string(ToteId t) {
  switch (t) {
    case ToteId::Picking: return "picking";
    case ToteId::Packing: return "packing";
    case ToteId::Neither: return "neither";
  }
  return "neither";
}

ToteId tote_from_string(const std::string& s) {
  if (s == "picking") return ToteId::Picking;
  if (s == "packing") return ToteId::Packing;
  if (s == "neither") return ToteId::Neither;
  fail(ErrorCode::Validation, "unknown tote \"" + s + "\"");
}

json skills_to_json(const std::vector<SkillSpec>& skills) {
  json arr = json::array();
  for (const SkillSpec& s : skills) {
    json js;
    js["name"] = s.name;
    js["theta"] = s.theta;
    js["segments"] = s.segments;
    js["role"] = role_to_string(s.role);
    arr.push_back(js);
  }
  return arr;
}

std::vector<SkillSpec> skills_from_json(const json& arr) {
  if (!arr.is_array() || arr.empty())
    fail(ErrorCode::Validation, "header: skills must be a non-empty array");
  std::vector<SkillSpec> out;
  for (const auto& js : arr) {
    require_keys(js, {"name", "theta", "segments", "role"}, "skill");
    SkillSpec s;
    s.id = static_cast<int>(out.size());
    s.name = get_req<std::string>(js, "name", "skill");
    s.theta = get_req<double>(js, "theta", "skill");
    s.segments = get_req<int>(js, "segments", "skill");
    s.role = role_from_string(get_req<std::string>(js, "role", "skill"));
    if (s.segments < 1)
      fail(ErrorCode::Validation, "skill segments must be positive");
    if (!(s.theta > 0.0 && s.theta <= 1.0))
      fail(ErrorCode::Validation, "skill theta must lie in (0, 1]");
    out.push_back(std::move(s));
  }
  return out;
}

json window_to_json(const GtWindow& w) {
  return json::array({w.start, w.end});
}

GtWindow window_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::Validation, "window must be [start, end]");
  return {j[0].get<int64_t>(), j[1].get<int64_t>()};
}

std::string step_line(const DemoStep& st, const AnnotatedDemo* anno,
                      size_t idx) {
  json j;
  j["t"] = "step";
  j["tick"] = st.tick;
  j["target"] = pose_to_json(st.act.target);
  j["suction_cmd"] = st.act.suction;
  j["robot"] = pose_to_json(st.obs.robot);
  j["suction_on"] = st.obs.suction_on;
  j["object"] = pose_to_json(st.obs.object);
  j["upright"] = st.obs.upright;
  j["attached"] = st.obs.attached;
  j["contact"] = st.obs.contact;
  j["tote"] = tote_to_string(st.obs.tote);
  j["skill"] = st.skill;
  j["segment"] = st.segment;
  if (anno) {
    j["progress"] = anno->progress[idx];
    j["suction_dilated"] = anno->suction_dilated[idx];
  }
  return j.dump();
}

std::string demo_line(size_t index, const Demonstration& d,
                      const AnnotatedDemo* anno) {
  json j;
  j["t"] = "demo";
  j["index"] = index;
  j["ordering"] = d.ordering;
  j["seed"] = d.seed;
  j["sigma"] = d.sigma;
  j["steps"] = d.steps.size();
  json w = json::array();
  for (const GtWindow& g : d.windows) w.push_back(window_to_json(g));
  j["gt_windows"] = w;
  if (anno) {
    j["alpha"] = anno->alpha;
    json dw = json::array();
    for (const GtWindow& g : anno->windows) dw.push_back(window_to_json(g));
    j["windows"] = dw;
  }
  return j.dump();
}

void write_dataset(const std::string& path, const ScenarioConfig& scenario,
                   const std::vector<SkillSpec>& skills,
                   const std::vector<Demonstration>& demos,
                   const std::vector<AnnotatedDemo>* annos,
                   const DatasetStats* stats, int k_dilation) {
  std::ostringstream out;
  json header;
  header["t"] = "header";
  header["schema_version"] = 1;
  header["kind"] = annos ? "annotated" : "demos";
  header["scenario"] = parse_json_text(scenario_to_json_text(scenario),
                                       "scenario");
  header["skills"] = skills_to_json(skills);
  header["demos"] = demos.size();
  if (annos) {
    header["k_dilation"] = k_dilation;
    header["stats"] = parse_json_text(stats_to_json_text(*stats), "stats");
  }
  out << header.dump() << "\n";
  for (size_t i = 0; i < demos.size(); ++i) {
    const AnnotatedDemo* a = annos ? &(*annos)[i] : nullptr;
    out << demo_line(i, demos[i], a) << "\n";
    for (size_t s = 0; s < demos[i].steps.size(); ++s)
      out << step_line(demos[i].steps[s], a, s) << "\n";
  }
  save_text_file(path, out.str());
}

struct ParsedDataset {
  bool annotated = false;
  LoadedAnnotated data;
};

ParsedDataset read_dataset(const std::string& path) {
  std::istringstream in(load_text_file(path));
  ParsedDataset pd;
  LoadedAnnotated& out = pd.data;
  bool header_seen = false;
  size_t expected_demos = 0;
  size_t expected_steps = 0;
  int n_skills = 0;
  std::string line;
  size_t line_no = 0;

  auto finalize_demo = [&]() {
    if (out.demos.empty()) return;
    if (out.demos.back().steps.size() != expected_steps)
      fail(ErrorCode::Validation,
           path + ": demo step count does not match its metadata");
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = parse_json_text(line, path + ":" + std::to_string(line_no));
    std::string t = get_req<std::string>(j, "t", "line");
    if (t == "header") {
      if (header_seen)
        fail(ErrorCode::Validation, path + ": duplicate header line");
      header_seen = true;
      require_keys(j,
                   {"t", "schema_version", "kind", "scenario", "skills",
                    "demos", "k_dilation", "stats"},
                   "header");
      if (get_req<int>(j, "schema_version", "header") != 1)
        fail(ErrorCode::Validation, path + ": unsupported schema version");
      std::string kind = get_req<std::string>(j, "kind", "header");
      pd.annotated = kind == "annotated";
      if (!pd.annotated && kind != "demos")
        fail(ErrorCode::Validation, path + ": unknown dataset kind");
      out.scenario = scenario_from_json_text(j.at("scenario").dump());
      out.skills = skills_from_json(j.at("skills"));
      n_skills = static_cast<int>(out.skills.size());
      expected_demos = get_req<size_t>(j, "demos", "header");
      if (pd.annotated) {
        out.k_dilation = get_req<int>(j, "k_dilation", "header");
        out.stats = stats_from_json_text(j.at("stats").dump());
        if (out.stats.n_skills != n_skills)
          fail(ErrorCode::Validation,
               path + ": stats do not match the skill roster");
      } else if (j.contains("k_dilation") || j.contains("stats")) {
        fail(ErrorCode::Validation,
             path + ": plain datasets carry no annotation fields");
      }
      continue;
    }
    if (!header_seen)
      fail(ErrorCode::Validation, path + ": first line must be the header");
    if (t == "demo") {
      finalize_demo();
      if (pd.annotated)
        require_keys(j,
                     {"t", "index", "ordering", "seed", "sigma", "steps",
                      "gt_windows", "alpha", "windows"},
                     "demo");
      else
        require_keys(
            j, {"t", "index", "ordering", "seed", "sigma", "steps",
                "gt_windows"},
            "demo");
      if (get_req<size_t>(j, "index", "demo") != out.demos.size())
        fail(ErrorCode::Validation, path + ": demo lines out of order");
      Demonstration d;
      d.ordering = get_req<std::vector<int>>(j, "ordering", "demo");
      d.seed = get_req<uint64_t>(j, "seed", "demo");
      d.sigma = get_req<double>(j, "sigma", "demo");
      expected_steps = get_req<size_t>(j, "steps", "demo");
      for (const auto& w : j.at("gt_windows"))
        d.windows.push_back(window_from_json(w));
      if (d.windows.size() != d.ordering.size())
        fail(ErrorCode::Validation,
             path + ": gt_windows must parallel the ordering");
      out.demos.push_back(std::move(d));
      if (pd.annotated) {
        AnnotatedDemo a;
        a.alpha = get_req<std::vector<double>>(j, "alpha", "demo");
        for (const auto& w : j.at("windows"))
          a.windows.push_back(window_from_json(w));
        if (a.alpha.size() != out.demos.back().ordering.size() ||
            a.windows.size() != a.alpha.size())
          fail(ErrorCode::Validation,
               path + ": annotation must parallel the ordering");
        out.annos.push_back(std::move(a));
      }
      continue;
    }
    if (t == "step") {
      if (out.demos.empty())
        fail(ErrorCode::Validation, path + ": step line before any demo");
      if (pd.annotated)
        require_keys(j,
                     {"t", "tick", "target", "suction_cmd", "robot",
                      "suction_on", "object", "upright", "attached", "contact",
                      "tote", "skill", "segment", "progress",
                      "suction_dilated"},
                     "step");
      else
        require_keys(j,
                     {"t", "tick", "target", "suction_cmd", "robot",
                      "suction_on", "object", "upright", "attached", "contact",
                      "tote", "skill", "segment"},
                     "step");
      Demonstration& d = out.demos.back();
      DemoStep st;
      st.tick = get_req<int64_t>(j, "tick", "step");
      if (st.tick != static_cast<int64_t>(d.steps.size()))
        fail(ErrorCode::Validation, path + ": step ticks must be sequential");
      st.act.target = pose_from_json(j.at("target"), "step");
      st.act.suction = get_req<int>(j, "suction_cmd", "step");
      st.obs.tick = st.tick + 1;
      st.obs.robot = pose_from_json(j.at("robot"), "step");
      st.obs.suction_on = get_req<bool>(j, "suction_on", "step");
      st.obs.object = pose_from_json(j.at("object"), "step");
      st.obs.object_w = out.scenario.sim.object_w;
      st.obs.object_d = out.scenario.sim.object_d;
      st.obs.object_h = out.scenario.sim.object_h;
      st.obs.upright = get_req<bool>(j, "upright", "step");
      st.obs.attached = get_req<bool>(j, "attached", "step");
      st.obs.contact = get_req<bool>(j, "contact", "step");
      st.obs.tote = tote_from_string(get_req<std::string>(j, "tote", "step"));
      st.skill = get_req<int>(j, "skill", "step");
      st.segment = get_req<int>(j, "segment", "step");
      if (st.skill < 0 || st.skill >= n_skills)
        fail(ErrorCode::Validation, path + ": step references unknown skill");
      d.steps.push_back(std::move(st));
      if (pd.annotated) {
        AnnotatedDemo& a = out.annos.back();
        auto prog = get_req<std::vector<double>>(j, "progress", "step");
        if (static_cast<int>(prog.size()) != n_skills)
          fail(ErrorCode::Validation,
               path + ": progress rows must cover every skill");
        a.progress.push_back(std::move(prog));
        a.suction_dilated.push_back(get_req<int>(j, "suction_dilated", "step"));
      }
      continue;
    }
    fail(ErrorCode::Validation, path + ": unknown line kind \"" + t + "\"");
  }
  if (!header_seen) fail(ErrorCode::Validation, path + ": missing header");
  finalize_demo();
  if (out.demos.size() != expected_demos)
    fail(ErrorCode::Validation, path + ": demo count does not match header");
  return pd;
}

}  // namespace

const char* role_to_string(TaskRole r) {
  switch (r) {
    case TaskRole::Flip: return "flip";
    case TaskRole::Pick: return "pick";
    case TaskRole::Pack: return "pack";
    case TaskRole::Push: return "push";
    case TaskRole::None: return "none";
  }
  return "none";
}

TaskRole role_from_string(const std::string& s) {
  if (s == "flip") return TaskRole::Flip;
  if (s == "pick") return TaskRole::Pick;
  if (s == "pack") return TaskRole::Pack;
  if (s == "push") return TaskRole::Push;
  if (s == "none") return TaskRole::None;
  fail(ErrorCode::Validation, "unknown task role \"" + s + "\"");
}

void save_demos(const std::string& path, const ScenarioConfig& scenario,
                const std::vector<SkillSpec>& skills,
                const std::vector<Demonstration>& demos) {
  write_dataset(path, scenario, skills, demos, nullptr, nullptr, 0);
}

LoadedDemos load_demos(const std::string& path) {
  ParsedDataset pd = read_dataset(path);
  if (pd.annotated)
    fail(ErrorCode::Validation, path + " is an annotated dataset");
  return {std::move(pd.data.scenario), std::move(pd.data.skills),
          std::move(pd.data.demos)};
}

void save_annotated(const std::string& path, const ScenarioConfig& scenario,
                    const std::vector<SkillSpec>& skills,
                    const std::vector<Demonstration>& demos,
                    const std::vector<AnnotatedDemo>& annos,
                    const DatasetStats& stats, int k_dilation) {
  if (annos.size() != demos.size())
    fail(ErrorCode::Validation, "annotations must parallel the demonstrations");
  write_dataset(path, scenario, skills, demos, &annos, &stats, k_dilation);
}

LoadedAnnotated load_annotated(const std::string& path) {
  ParsedDataset pd = read_dataset(path);
  if (!pd.annotated)
    fail(ErrorCode::Validation, path + " is not an annotated dataset");
  return std::move(pd.data);
}

std::string stats_to_json_text(const DatasetStats& stats) {
  json j;
  j["n_skills"] = stats.n_skills;
  j["demo_count"] = stats.demo_count;
  j["max_duration"] = stats.max_duration;
  j["mean_segment_duration"] = stats.mean_segment_duration;
  j["alpha_median"] = stats.alpha_median;
  j["coverage"] = stats.coverage;
  return j.dump(2);
}

DatasetStats stats_from_json_text(const std::string& text) {
  json j = parse_json_text(text, "stats");
  require_keys(j,
               {"n_skills", "demo_count", "max_duration",
                "mean_segment_duration", "alpha_median", "coverage"},
               "stats");
  DatasetStats st;
  st.n_skills = get_req<int>(j, "n_skills", "stats");
  st.demo_count = get_req<int64_t>(j, "demo_count", "stats");
  st.max_duration = get_req<std::vector<int64_t>>(j, "max_duration", "stats");
  st.mean_segment_duration = get_req<std::vector<std::vector<int64_t>>>(
      j, "mean_segment_duration", "stats");
  st.alpha_median = get_req<std::vector<double>>(j, "alpha_median", "stats");
  st.coverage = get_req<std::vector<double>>(j, "coverage", "stats");
  size_t n = static_cast<size_t>(st.n_skills);
  if (st.n_skills < 1 || st.max_duration.size() != n ||
      st.mean_segment_duration.size() != n || st.alpha_median.size() != n ||
      st.coverage.size() != n)
    fail(ErrorCode::Validation, "stats arrays must cover every skill");
  return st;
}

std::string trace_to_csv(const std::vector<Observation>& trace) {
  std::ostringstream out;
  out << "tick,robot_x,robot_y,robot_z,robot_yaw,suction,object_x,object_y,"
         "object_yaw,upright,attached,contact\n";
  for (size_t i = 0; i < trace.size(); ++i) {
    const Observation& o = trace[i];
    out << i << ',' << fmt6(o.robot.x) << ',' << fmt6(o.robot.y) << ','
        << fmt6(o.robot.z) << ',' << fmt6(o.robot.yaw) << ','
        << (o.suction_on ? 1 : 0) << ',' << fmt6(o.object.x) << ','
        << fmt6(o.object.y) << ',' << fmt6(o.object.yaw) << ','
        << (o.upright ? 1 : 0) << ',' << (o.attached ? 1 : 0) << ','
        << (o.contact ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string decisions_to_csv(const std::vector<CycleRecord>& cycles,
                             int n_skills) {
  std::ostringstream out;
  out << "cycle,decision_tick,complete,skill,segment,sequence,distance,"
         "executed";
  for (int s = 0; s < n_skills; ++s) out << ",rho_" << s;
  out << "\n";
  for (const CycleRecord& c : cycles) {
    out << c.cycle << ',' << c.decision_tick << ',' << (c.complete ? 1 : 0)
        << ',' << c.skill << ',' << c.segment << ',' << c.sequence << ','
        << fmt6(c.distance) << ',' << c.executed;
    for (int s = 0; s < n_skills; ++s)
      out << ',' << fmt6(s < static_cast<int>(c.rho.size()) ? c.rho[s] : -1.0);
    out << "\n";
  }
  return out.str();
}

std::string metrics_to_csv(
    const std::vector<std::pair<std::string, EvalSummary>>& rows) {
  std::ostringstream out;
  out << "label,trials,successes,aborted,timed_out,success_rate,mean_ticks,"
         "mean_execution_ticks,cycles_hist\n";
  for (const auto& [label, sum] : rows) {
    std::map<int, int> hist;
    for (const TrialResult& t : sum.rows) ++hist[t.cycles];
    std::string h;
    for (const auto& [k, v] : hist) {
      if (!h.empty()) h += ';';
      h += std::to_string(k) + ":" + std::to_string(v);
    }
    out << label << ',' << sum.trials << ',' << sum.successes << ','
        << sum.aborted << ',' << sum.timed_out << ','
        << fmt6(sum.success_rate) << ',' << fmt6(sum.mean_ticks) << ','
        << fmt6(sum.mean_execution_ticks) << ',' << h << "\n";
  }
  return out.str();
}

std::string trials_to_csv(const EvalSummary& summary) {
  std::ostringstream out;
  out << "trial,seed,outcome,success,ticks,execution_ticks,cycles,final_dist,"
         "final_yaw_err,flip_done,pick_done,pack_done,push_orientation_done,"
         "push_position_done\n";
  for (size_t i = 0; i < summary.rows.size(); ++i) {
    const TrialResult& t = summary.rows[i];
    out << i << ',' << t.seed << ',' << to_string(t.outcome) << ','
        << (t.success ? 1 : 0) << ',' << t.ticks << ',' << t.execution_ticks
        << ',' << t.cycles << ',' << fmt6(t.final_dist) << ','
        << fmt6(t.final_yaw_err) << ',' << (t.post_flip ? 1 : 0) << ','
        << (t.post_pick ? 1 : 0) << ',' << (t.post_pack ? 1 : 0) << ','
        << (t.post_push_orientation ? 1 : 0) << ','
        << (t.post_push_position ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace progss
