#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "annotation/annotate.hpp"
#include "core/error.hpp"
#include "data/dataset_io.hpp"
#include "data/json_util.hpp"
#include "skills/demo_gen.hpp"

using namespace progss;

namespace {

ScenarioConfig edge_scenario() {
  ScenarioConfig sc;
  sc.spawn.kind = SpawnKind::Edge;
  return sc;
}

std::vector<Demonstration> small_dataset(const PolicyBank& bank,
                                         const ScenarioConfig& sc) {
  std::vector<Demonstration> demos;
  demos.push_back(generate_demo(bank, {0, 1, 2, 3}, sc, 0));
  demos.push_back(generate_demo(bank, {0, 1, 2, 3}, sc, 1));
  demos.push_back(generate_demo(bank, {0, 1, 2}, sc, 2));
  return demos;
}

template <typename F>
int code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return static_cast<int>(e.code());
  }
  return 0;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(load_text_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ostringstream out;
  for (const std::string& l : lines) out << l << "\n";
  save_text_file(path, out.str());
}

// applies an in-place JSON edit to one line of a JSONL file
template <typename F>
void mutate_line(const std::string& src, const std::string& dst, size_t idx,
                 F&& edit) {
  std::vector<std::string> lines = read_lines(src);
  REQUIRE(idx < lines.size());
  nlohmann::json j = nlohmann::json::parse(lines[idx]);
  edit(j);
  lines[idx] = j.dump();
  write_lines(dst, lines);
}

bool same_step(const DemoStep& a, const DemoStep& b) {
  return a.tick == b.tick && a.act.target.x == b.act.target.x &&
         a.act.target.y == b.act.target.y && a.act.target.z == b.act.target.z &&
         a.act.target.yaw == b.act.target.yaw && a.act.suction == b.act.suction &&
         a.obs.robot.x == b.obs.robot.x && a.obs.robot.yaw == b.obs.robot.yaw &&
         a.obs.object.x == b.obs.object.x && a.obs.object.y == b.obs.object.y &&
         a.obs.object.yaw == b.obs.object.yaw && a.obs.upright == b.obs.upright &&
         a.obs.attached == b.obs.attached && a.obs.contact == b.obs.contact &&
         a.obs.suction_on == b.obs.suction_on && a.obs.tote == b.obs.tote &&
         a.skill == b.skill && a.segment == b.segment;
}

size_t columns(const std::string& line) {
  return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

const char* kDemoPath = "/tmp/progss_fmt_demos.jsonl";
const char* kAnnoPath = "/tmp/progss_fmt_annotated.jsonl";
const char* kMutPath = "/tmp/progss_fmt_mutated.jsonl";

}  // namespace

TEST_CASE("demonstration files round-trip and re-save byte-identically") {
  PolicyBank bank = default_bank();
  ScenarioConfig sc = edge_scenario();
  std::vector<Demonstration> demos = small_dataset(bank, sc);

  save_demos(kDemoPath, sc, bank.skills, demos);
  LoadedDemos back = load_demos(kDemoPath);

  CHECK(back.scenario.spawn.kind == SpawnKind::Edge);
  CHECK(back.scenario.horizon == sc.horizon);
  CHECK(back.scenario.thresholds == sc.thresholds);
  CHECK(back.scenario.sim.object_w == sc.sim.object_w);
  REQUIRE(back.skills.size() == bank.skills.size());
  for (size_t s = 0; s < bank.skills.size(); ++s) {
    CHECK(back.skills[s].name == bank.skills[s].name);
    CHECK(back.skills[s].theta == bank.skills[s].theta);
    CHECK(back.skills[s].segments == bank.skills[s].segments);
    CHECK(back.skills[s].role == bank.skills[s].role);
  }
  REQUIRE(back.demos.size() == demos.size());
  for (size_t d = 0; d < demos.size(); ++d) {
    CHECK(back.demos[d].ordering == demos[d].ordering);
    CHECK(back.demos[d].seed == demos[d].seed);
    CHECK(back.demos[d].sigma == demos[d].sigma);
    REQUIRE(back.demos[d].steps.size() == demos[d].steps.size());
    REQUIRE(back.demos[d].windows.size() == demos[d].windows.size());
    for (size_t w = 0; w < demos[d].windows.size(); ++w) {
      CHECK(back.demos[d].windows[w].start == demos[d].windows[w].start);
      CHECK(back.demos[d].windows[w].end == demos[d].windows[w].end);
    }
    for (size_t i = 0; i < demos[d].steps.size(); ++i)
      CHECK(same_step(back.demos[d].steps[i], demos[d].steps[i]));
  }

  // serialize-parse-serialize is a fixed point, byte for byte
  const char* second = "/tmp/progss_fmt_demos2.jsonl";
  save_demos(second, back.scenario, back.skills, back.demos);
  CHECK(load_text_file(kDemoPath) == load_text_file(second));
  std::remove(second);
}

TEST_CASE("noisy demonstrations keep their doubles through the file") {
  PolicyBank bank = default_bank();
  ScenarioConfig sc = edge_scenario();
  sc.noise_sigma = 0.002;
  Demonstration demo = generate_demo(bank, {0, 1, 2}, sc, 7);
  demo.sigma = sc.noise_sigma;

  const char* path = "/tmp/progss_fmt_noisy.jsonl";
  save_demos(path, sc, bank.skills, {demo});
  LoadedDemos back = load_demos(path);
  REQUIRE(back.demos.size() == 1);
  REQUIRE(back.demos[0].steps.size() == demo.steps.size());
  for (size_t i = 0; i < demo.steps.size(); ++i)
    CHECK(same_step(back.demos[0].steps[i], demo.steps[i]));
  CHECK(back.demos[0].sigma == 0.002);
  std::remove(path);
}

TEST_CASE("annotated files round-trip labels, alphas, windows and stats") {
  PolicyBank bank = default_bank();
  ScenarioConfig sc = edge_scenario();
  std::vector<Demonstration> demos = small_dataset(bank, sc);
  AnnotatedDataset ds = annotate_dataset(demos, {1, 1, 1, 2}, 1);

  save_annotated(kAnnoPath, sc, bank.skills, demos, ds.annos, ds.stats, 1);
  LoadedAnnotated back = load_annotated(kAnnoPath);

  CHECK(back.k_dilation == 1);
  CHECK(back.stats.n_skills == ds.stats.n_skills);
  CHECK(back.stats.demo_count == ds.stats.demo_count);
  CHECK(back.stats.max_duration == ds.stats.max_duration);
  CHECK(back.stats.mean_segment_duration == ds.stats.mean_segment_duration);
  CHECK(back.stats.alpha_median == ds.stats.alpha_median);
  CHECK(back.stats.coverage == ds.stats.coverage);

  REQUIRE(back.annos.size() == ds.annos.size());
  for (size_t d = 0; d < ds.annos.size(); ++d) {
    CHECK(back.annos[d].alpha == ds.annos[d].alpha);
    REQUIRE(back.annos[d].windows.size() == ds.annos[d].windows.size());
    for (size_t w = 0; w < ds.annos[d].windows.size(); ++w) {
      CHECK(back.annos[d].windows[w].start == ds.annos[d].windows[w].start);
      CHECK(back.annos[d].windows[w].end == ds.annos[d].windows[w].end);
    }
    CHECK(back.annos[d].progress == ds.annos[d].progress);
    CHECK(back.annos[d].suction_dilated == ds.annos[d].suction_dilated);
  }

  const char* second = "/tmp/progss_fmt_annotated2.jsonl";
  save_annotated(second, back.scenario, back.skills, back.demos, back.annos,
                 back.stats, back.k_dilation);
  CHECK(load_text_file(kAnnoPath) == load_text_file(second));
  std::remove(second);
}

TEST_CASE("dataset kind confusion is a validation error") {
  CHECK(code_of([&] { load_annotated(kDemoPath); }) == 1);
  CHECK(code_of([&] { load_demos(kAnnoPath); }) == 1);
}

TEST_CASE("every line kind rejects unknown and missing keys") {
  // header line
  mutate_line(kDemoPath, kMutPath, 0, [](nlohmann::json& j) { j["extra"] = 1; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // demo metadata line
  mutate_line(kDemoPath, kMutPath, 1, [](nlohmann::json& j) { j["extra"] = 1; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);
  mutate_line(kDemoPath, kMutPath, 1, [](nlohmann::json& j) { j.erase("seed"); });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // step line
  mutate_line(kDemoPath, kMutPath, 2, [](nlohmann::json& j) { j["extra"] = 1; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);
  mutate_line(kDemoPath, kMutPath, 2,
              [](nlohmann::json& j) { j.erase("contact"); });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // plain datasets must not carry annotation fields
  mutate_line(kDemoPath, kMutPath, 2,
              [](nlohmann::json& j) { j["progress"] = {1.0, 1.0, 1.0, 1.0}; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);
  mutate_line(kDemoPath, kMutPath, 0,
              [](nlohmann::json& j) { j["k_dilation"] = 1; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // unknown line kind
  mutate_line(kDemoPath, kMutPath, 2, [](nlohmann::json& j) { j["t"] = "bogus"; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);
}

TEST_CASE("dataset structural invariants are enforced") {
  std::vector<std::string> lines = read_lines(kDemoPath);

  // duplicate header
  std::vector<std::string> dup = lines;
  dup.insert(dup.begin() + 1, lines[0]);
  write_lines(kMutPath, dup);
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // a step line before any demo line
  std::vector<std::string> early = lines;
  std::swap(early[1], early[2]);
  write_lines(kMutPath, early);
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // first line must be the header
  std::vector<std::string> headless(lines.begin() + 1, lines.end());
  write_lines(kMutPath, headless);
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // ticks must be sequential within a demo
  mutate_line(kDemoPath, kMutPath, 3, [](nlohmann::json& j) { j["tick"] = 99; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // header demo count must match the body
  mutate_line(kDemoPath, kMutPath, 0, [](nlohmann::json& j) { j["demos"] = 9; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // demo step count must match its metadata
  mutate_line(kDemoPath, kMutPath, 1,
              [](nlohmann::json& j) { j["steps"] = j["steps"].get<int>() + 1; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  // schema version is pinned
  mutate_line(kDemoPath, kMutPath, 0,
              [](nlohmann::json& j) { j["schema_version"] = 2; });
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);

  save_text_file(kMutPath, "");
  CHECK(code_of([&] { load_demos(kMutPath); }) == 1);
}

TEST_CASE("stats JSON text is a fixed point and checks its arrays") {
  PolicyBank bank = default_bank();
  ScenarioConfig sc = edge_scenario();
  std::vector<Demonstration> demos = small_dataset(bank, sc);
  DatasetStats stats = annotate_dataset(demos, {1, 1, 1, 2}, 1).stats;

  std::string text = stats_to_json_text(stats);
  DatasetStats back = stats_from_json_text(text);
  CHECK(back.n_skills == stats.n_skills);
  CHECK(back.demo_count == stats.demo_count);
  CHECK(back.max_duration == stats.max_duration);
  CHECK(back.mean_segment_duration == stats.mean_segment_duration);
  CHECK(back.alpha_median == stats.alpha_median);
  CHECK(back.coverage == stats.coverage);
  CHECK(stats_to_json_text(back) == text);

  nlohmann::json j = nlohmann::json::parse(text);
  j["alpha_median"].erase(0);
  CHECK(code_of([&] { stats_from_json_text(j.dump()); }) == 1);

  j = nlohmann::json::parse(text);
  j["extra"] = true;
  CHECK(code_of([&] { stats_from_json_text(j.dump()); }) == 1);
}

TEST_CASE("scenario JSON is a serialization fixed point") {
  ScenarioConfig sc;
  std::string text = scenario_to_json_text(sc);
  ScenarioConfig back = scenario_from_json_text(text);
  CHECK(scenario_to_json_text(back) == text);
  CHECK(back.name == "default");
  CHECK(back.horizon == 50);
  CHECK(back.thresholds == std::vector<double>{0.9, 0.9, 0.9, 0.9});
}

TEST_CASE("non-default scenario fields survive the round trip") {
  ScenarioConfig sc;
  sc.name = "stress";
  sc.spawn.kind = SpawnKind::Box;
  sc.spawn.box = {0.10, 0.05, 0.25, 0.20};
  sc.spawn.yaw_lo = -0.3;
  sc.spawn.yaw_hi = 0.9;
  sc.spawn.upright = true;
  sc.goal.corner = GoalCorner::TopRight;
  sc.goal.source = GoalSource::ImagePatch;
  sc.horizon = 40;
  sc.max_ticks = 900;
  sc.hold_ticks = 25;
  sc.noise_sigma = 0.001;
  sc.thresholds = {0.8, 0.9, 0.95, 0.85};
  sc.hysteresis = false;
  sc.hysteresis_delta = 0.07;
  sc.abort_stall_cycles = 5;
  sc.abort_min_gain = 0.02;
  sc.sim.object_w = 0.10;
  sc.sim.push_gain = 80.0;
  Disturbance reset;
  reset.kind = DisturbanceKind::ResetObjectToWall;
  reset.at_tick = 100;
  Disturbance tp;
  tp.kind = DisturbanceKind::TeleportObject;
  tp.at_tick = 50;
  tp.pose = {0.2, 0.1, 0.0, 0.4};
  sc.disturbances = {reset, tp};

  std::string text = scenario_to_json_text(sc);
  ScenarioConfig back = scenario_from_json_text(text);
  CHECK(back.name == "stress");
  CHECK(back.spawn.kind == SpawnKind::Box);
  CHECK(back.spawn.box.x0 == sc.spawn.box.x0);
  CHECK(back.spawn.box.y1 == sc.spawn.box.y1);
  CHECK(back.spawn.yaw_lo == sc.spawn.yaw_lo);
  CHECK(back.spawn.yaw_hi == sc.spawn.yaw_hi);
  CHECK(back.spawn.upright);
  CHECK(back.goal.corner == GoalCorner::TopRight);
  CHECK(back.goal.source == GoalSource::ImagePatch);
  CHECK(back.horizon == 40);
  CHECK(back.max_ticks == 900);
  CHECK(back.hold_ticks == 25);
  CHECK(back.noise_sigma == 0.001);
  CHECK(back.thresholds == sc.thresholds);
  CHECK_FALSE(back.hysteresis);
  CHECK(back.hysteresis_delta == 0.07);
  CHECK(back.abort_stall_cycles == 5);
  CHECK(back.abort_min_gain == 0.02);
  CHECK(back.sim.object_w == 0.10);
  CHECK(back.sim.push_gain == 80.0);
  CHECK(back.sim.object_d == SimParams{}.object_d);
  REQUIRE(back.disturbances.size() == 2);
  CHECK(back.disturbances[0].kind == DisturbanceKind::ResetObjectToWall);
  CHECK(back.disturbances[0].at_tick == 100);
  CHECK(back.disturbances[1].kind == DisturbanceKind::TeleportObject);
  CHECK(back.disturbances[1].pose.x == 0.2);
  CHECK(back.disturbances[1].pose.yaw == 0.4);
  CHECK(scenario_to_json_text(back) == text);
}

TEST_CASE("scenario validation rejects malformed configurations") {
  std::string base = scenario_to_json_text(ScenarioConfig{});
  auto broken = [&](auto&& edit) {
    nlohmann::json j = nlohmann::json::parse(base);
    edit(j);
    return code_of([&] { scenario_from_json_text(j.dump()); });
  };

  CHECK(broken([](nlohmann::json& j) { j["goal"]["corner"] = "xx"; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["horizon"] = 0; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["max_ticks"] = 10; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["thresholds"] = {1.5}; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["abort_stall_cycles"] = 0; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["hysteresis_delta"] = -0.1; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["noise_sigma"] = -1.0; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["schema_version"] = 2; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["surprise"] = 1; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["sim"]["gravity"] = 9.8; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["sim"]["object_w"] = -0.1; }) == 1);
  CHECK(broken([](nlohmann::json& j) { j["spawn"]["kind"] = "corner"; }) == 1);
  CHECK(broken([](nlohmann::json& j) {
          j["spawn"]["kind"] = "box";
          j["spawn"].erase("box");
        }) == 1);
  CHECK(broken([](nlohmann::json& j) {
          j["spawn"]["kind"] = "box";
          j["spawn"]["box"] = {0.3, 0.1, 0.2, 0.2};
        }) == 1);
  CHECK(broken([](nlohmann::json& j) {
          j["spawn"]["yaw_range"] = {0.5, -0.5};
        }) == 1);
  CHECK(broken([](nlohmann::json& j) {
          j["disturbances"] = {{{"kind", "teleport_object"}, {"at_tick", 5}}};
        }) == 1);
  CHECK(broken([](nlohmann::json& j) {
          j["disturbances"] = {{{"kind", "detach_suction"},
                                {"at_tick", 5},
                                {"pose", {0.1, 0.1, 0.0, 0.0}}}};
        }) == 1);
  CHECK(broken([](nlohmann::json& j) {
          j["disturbances"] = {{{"kind", "reset_object_to_wall"},
                                {"at_tick", -1}}};
        }) == 1);

  CHECK(code_of([&] { scenario_from_json_text("{ not json"); }) == 1);
  CHECK(code_of([&] { load_scenario("/tmp/progss_no_such_scenario.json"); }) ==
        2);
}

TEST_CASE("trace CSV has a stable header and one row per observation") {
  PolicyBank bank = default_bank();
  ScenarioConfig sc = edge_scenario();
  Demonstration demo = generate_demo(bank, {0, 1}, sc, 3);
  std::vector<Observation> trace;
  for (size_t i = 0; i < 5; ++i) trace.push_back(demo.steps[i].obs);

  std::string csv = trace_to_csv(trace);
  std::vector<std::string> lines;
  {
    std::istringstream in(csv);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  REQUIRE(lines.size() == trace.size() + 1);
  CHECK(lines[0] ==
        "tick,robot_x,robot_y,robot_z,robot_yaw,suction,object_x,object_y,"
        "object_yaw,upright,attached,contact");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(columns(lines[i]) == 12);
    CHECK(lines[i].substr(0, lines[i].find(',')) == std::to_string(i - 1));
  }
  CHECK(trace_to_csv(trace) == csv);
}

TEST_CASE("decision CSV pads missing progress entries with minus one") {
  CycleRecord a;
  a.cycle = 0;
  a.decision_tick = 0;
  a.rho = {0.5, 0.25, 1.0, 0.125};
  a.skill = 1;
  a.segment = 0;
  a.executed = 50;
  CycleRecord b;
  b.cycle = 1;
  b.decision_tick = 50;
  b.rho = {0.5, 0.5};  // short on purpose
  b.complete = true;
  b.sequence = 2;
  b.distance = 0.75;
  b.executed = 50;

  std::string csv = decisions_to_csv({a, b}, 4);
  std::vector<std::string> lines;
  {
    std::istringstream in(csv);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "cycle,decision_tick,complete,skill,segment,sequence,distance,"
        "executed,rho_0,rho_1,rho_2,rho_3");
  CHECK(lines[1] ==
        "0,0,0,1,0,-1,0.000000,50,0.500000,0.250000,1.000000,0.125000");
  CHECK(lines[2] ==
        "1,50,1,-1,0,2,0.750000,50,0.500000,0.500000,-1.000000,-1.000000");
}

TEST_CASE("metrics and trial CSVs have stable shapes") {
  EvalSummary sum;
  sum.trials = 3;
  sum.successes = 1;
  sum.aborted = 1;
  sum.timed_out = 1;
  sum.success_rate = 1.0 / 3.0;
  sum.mean_ticks = 500.0;
  sum.mean_execution_ticks = 210.0;
  TrialResult t0;
  t0.seed = 11;
  t0.outcome = Outcome::Completed;
  t0.success = true;
  t0.ticks = 400;
  t0.execution_ticks = 210;
  t0.cycles = 2;
  t0.post_flip = t0.post_pick = t0.post_pack = true;
  t0.post_push_orientation = t0.post_push_position = true;
  TrialResult t1;
  t1.seed = 12;
  t1.outcome = Outcome::Aborted;
  t1.cycles = 2;
  TrialResult t2;
  t2.seed = 13;
  t2.outcome = Outcome::TimedOut;
  t2.cycles = 5;
  sum.rows = {t0, t1, t2};

  std::string metrics = metrics_to_csv({{"edge", sum}});
  std::vector<std::string> mlines;
  {
    std::istringstream in(metrics);
    std::string l;
    while (std::getline(in, l)) mlines.push_back(l);
  }
  REQUIRE(mlines.size() == 2);
  CHECK(mlines[0] ==
        "label,trials,successes,aborted,timed_out,success_rate,mean_ticks,"
        "mean_execution_ticks,cycles_hist");
  CHECK(mlines[1] ==
        "edge,3,1,1,1,0.333333,500.000000,210.000000,2:2;5:1");

  std::string trials = trials_to_csv(sum);
  std::vector<std::string> tlines;
  {
    std::istringstream in(trials);
    std::string l;
    while (std::getline(in, l)) tlines.push_back(l);
  }
  REQUIRE(tlines.size() == 4);
  CHECK(tlines[0] ==
        "trial,seed,outcome,success,ticks,execution_ticks,cycles,final_dist,"
        "final_yaw_err,flip_done,pick_done,pack_done,push_orientation_done,"
        "push_position_done");
  CHECK(tlines[1] ==
        "0,11,completed,1,400,210,2,0.000000,0.000000,1,1,1,1,1");
  CHECK(tlines[2].rfind("1,12,aborted,0,", 0) == 0);
  CHECK(tlines[3].rfind("2,13,timed_out,0,", 0) == 0);
}

TEST_CASE("text files are replaced atomically and io errors carry codes") {
  const char* path = "/tmp/progss_fmt_atomic.txt";
  save_text_file(path, "first version\n");
  save_text_file(path, "v2\n");
  CHECK(load_text_file(path) == "v2\n");
  std::ifstream tmp(std::string(path) + ".tmp");
  CHECK_FALSE(tmp.good());
  std::remove(path);

  CHECK(code_of([&] {
          save_text_file("/tmp/progss_missing_dir/out.txt", "x");
        }) == 2);
  CHECK(code_of([&] { load_text_file("/tmp/progss_fmt_nothing.txt"); }) == 2);

  std::remove(kDemoPath);
  std::remove(kAnnoPath);
  std::remove(kMutPath);
}
