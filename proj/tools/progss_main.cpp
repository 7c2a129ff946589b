// Command line front end. Talks to the toolkit exclusively through the
// public C interface; exit codes are 0 ok, 1 usage, 2 validation, 3 io.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "progss/progss.h"

namespace {

int report(progss_status st) {
  if (st != PROGSS_OK) std::fprintf(stderr, "error: %s\n", progss_last_error());
  return static_cast<int>(st);
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

struct ScenarioHandle {
  progss_scenario* sc = nullptr;
  ~ScenarioHandle() { progss_scenario_free(sc); }
};

// Shared scenario/estimator/source flags for run and evaluate. A manifest
// file may predefine any of them; explicit flags win.
struct RunFlags {
  std::string scenario, goal, estimator = "oracle", estimator_file, library,
      ordering, manifest;
  double noise = -1.0;
  uint64_t seed = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--scenario", f.scenario, "scenario JSON file");
  cmd->add_option("--goal", f.goal, "goal corner: tl, tr, bl, br");
  cmd->add_option("--estimator", f.estimator, "progress source: oracle or knn")
      ->check(CLI::IsMember({"oracle", "knn"}));
  cmd->add_option("--estimator-file", f.estimator_file,
                  "estimator snapshot (required for knn)");
  cmd->add_option("--library", f.library,
                  "sequence library JSON (multi-sequence mode)");
  cmd->add_option("--ordering", f.ordering,
                  "comma-separated skill names (single-sequence mode)");
  cmd->add_option("--seed", f.seed, "base random seed");
  cmd->add_option("--noise", f.noise, "actuation noise sigma override");
  cmd->add_option("--manifest", f.manifest,
                  "JSON file with defaults for the flags above");
}

// returns 0 on success, a CLI exit code otherwise
int apply_manifest(const CLI::App* cmd, RunFlags& f,
                   const std::vector<std::string>& extra_keys,
                   nlohmann::json* out_manifest) {
  *out_manifest = nlohmann::json::object();
  if (f.manifest.empty()) return 0;
  std::ifstream in(f.manifest);
  if (!in) {
    std::fprintf(stderr, "error: cannot open %s\n", f.manifest.c_str());
    return 3;
  }
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    std::fprintf(stderr, "error: %s is not a JSON object\n",
                 f.manifest.c_str());
    return 2;
  }
  std::vector<std::string> allowed = {"scenario",  "goal",     "estimator",
                                      "estimator_file", "library", "ordering",
                                      "seed",      "noise"};
  allowed.insert(allowed.end(), extra_keys.begin(), extra_keys.end());
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const std::string& k : allowed) known = known || k == key;
    if (!known) {
      std::fprintf(stderr, "error: manifest key \"%s\" is not recognised\n",
                   key.c_str());
      return 2;
    }
    (void)value;
  }
  auto take_str = [&](const char* flag, const char* key, std::string& dst) {
    if (cmd->count(flag) == 0 && j.contains(key) && j[key].is_string())
      dst = j[key].get<std::string>();
  };
  take_str("--scenario", "scenario", f.scenario);
  take_str("--goal", "goal", f.goal);
  take_str("--estimator", "estimator", f.estimator);
  take_str("--estimator-file", "estimator_file", f.estimator_file);
  take_str("--library", "library", f.library);
  take_str("--ordering", "ordering", f.ordering);
  if (cmd->count("--seed") == 0 && j.contains("seed"))
    f.seed = j["seed"].get<uint64_t>();
  if (cmd->count("--noise") == 0 && j.contains("noise"))
    f.noise = j["noise"].get<double>();
  *out_manifest = j;
  return 0;
}

void manifest_str(const CLI::App* cmd, const nlohmann::json& j,
                  const char* flag, const char* key, std::string& dst) {
  if (cmd->count(flag) == 0 && j.contains(key) && j[key].is_string())
    dst = j[key].get<std::string>();
}

int open_scenario(const RunFlags& f, ScenarioHandle& h) {
  if (f.scenario.empty()) {
    std::fprintf(stderr, "error: --scenario is required\n");
    return 1;
  }
  progss_status st = progss_scenario_load(f.scenario.c_str(), &h.sc);
  if (st != PROGSS_OK) return report(st);
  if (!f.goal.empty()) {
    st = progss_scenario_set_goal(h.sc, f.goal.c_str());
    if (st != PROGSS_OK) return report(st);
  }
  if (f.noise >= 0.0) {
    st = progss_scenario_set_seed_noise(h.sc, f.noise);
    if (st != PROGSS_OK) return report(st);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"progress-guided skill sequencing toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "roll out scripted demonstrations");
  RunFlags gen_f;
  std::string gen_orderings = "flip,pick,pack,push";
  int gen_trials = 10;
  std::string gen_out;
  gen->add_option("--scenario", gen_f.scenario, "scenario JSON file")
      ->required();
  gen->add_option("--goal", gen_f.goal, "goal corner override");
  gen->add_option("--orderings", gen_orderings,
                  "semicolon-separated orderings of skill names");
  gen->add_option("--trials", gen_trials, "demonstrations per ordering");
  gen->add_option("--seed", gen_f.seed, "base random seed");
  gen->add_option("--noise", gen_f.noise, "actuation noise sigma override");
  gen->add_option("--out", gen_out, "output dataset (JSON lines)")->required();

  // annotate
  auto* ann = app.add_subcommand("annotate", "label demonstrations with progress");
  std::string ann_in, ann_out;
  int ann_k = 1;
  ann->add_option("--in", ann_in, "demonstration dataset")->required();
  ann->add_option("--k-dilation", ann_k, "suction dilation radius");
  ann->add_option("--out", ann_out, "annotated dataset path")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "fit the nearest-neighbour estimator");
  std::string fit_in, fit_out;
  int fit_k = 5;
  fit->add_option("--in", fit_in, "annotated dataset")->required();
  fit->add_option("--k", fit_k, "neighbour count");
  fit->add_option("--out", fit_out, "estimator snapshot path")->required();

  // library
  auto* libc = app.add_subcommand("library", "build the sequence library");
  std::string lib_in, lib_out;
  libc->add_option("--in", lib_in, "annotated dataset")->required();
  libc->add_option("--out", lib_out, "library JSON path")->required();

  // run
  auto* run = app.add_subcommand("run", "run one closed-loop episode");
  RunFlags run_f;
  std::string run_trace, run_decisions;
  add_run_flags(run, run_f);
  run->add_option("--trace", run_trace, "write the tick trace CSV here");
  run->add_option("--decisions", run_decisions, "write the decision CSV here");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "run a deterministic trial batch");
  RunFlags ev_f;
  int ev_trials = 10;
  std::string ev_label = "run", ev_metrics, ev_trials_csv;
  add_run_flags(ev, ev_f);
  ev->add_option("--trials", ev_trials, "number of trials");
  ev->add_option("--label", ev_label, "label for the metrics row");
  ev->add_option("--metrics", ev_metrics, "write the summary CSV here");
  ev->add_option("--trials-csv", ev_trials_csv, "write per-trial rows here");

  // export
  auto* ex = app.add_subcommand("export", "flatten a dataset to CSV");
  std::string ex_in, ex_out;
  ex->add_option("--in", ex_in, "dataset (plain or annotated)")->required();
  ex->add_option("--out", ex_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (gen->parsed()) {
    ScenarioHandle h;
    if (int rc = open_scenario(gen_f, h)) return rc;
    return report(progss_generate(h.sc, gen_orderings.c_str(), gen_trials,
                                  gen_f.seed, gen_out.c_str()));
  }
  if (ann->parsed())
    return report(progss_annotate(ann_in.c_str(), ann_k, ann_out.c_str()));
  if (fit->parsed())
    return report(progss_fit(fit_in.c_str(), fit_k, fit_out.c_str()));
  if (libc->parsed())
    return report(progss_build_library(lib_in.c_str(), lib_out.c_str()));
  if (run->parsed()) {
    nlohmann::json m;
    if (int rc = apply_manifest(run, run_f, {"trace", "decisions"}, &m))
      return rc;
    manifest_str(run, m, "--trace", "trace", run_trace);
    manifest_str(run, m, "--decisions", "decisions", run_decisions);
    ScenarioHandle h;
    if (int rc = open_scenario(run_f, h)) return rc;
    int success = 0;
    progss_status st = progss_run(
        h.sc, run_f.estimator.c_str(), opt(run_f.estimator_file),
        opt(run_f.library), opt(run_f.ordering), run_f.seed, opt(run_trace),
        opt(run_decisions), &success);
    if (st != PROGSS_OK) return report(st);
    std::printf("success %d\n", success);
    return 0;
  }
  if (ev->parsed()) {
    nlohmann::json m;
    if (int rc = apply_manifest(
            ev, ev_f, {"trials", "label", "metrics", "trials_csv"}, &m))
      return rc;
    manifest_str(ev, m, "--label", "label", ev_label);
    manifest_str(ev, m, "--metrics", "metrics", ev_metrics);
    manifest_str(ev, m, "--trials-csv", "trials_csv", ev_trials_csv);
    if (ev->count("--trials") == 0 && m.contains("trials"))
      ev_trials = m["trials"].get<int>();
    ScenarioHandle h;
    if (int rc = open_scenario(ev_f, h)) return rc;
    double rate = 0.0;
    progss_status st = progss_evaluate(
        h.sc, ev_f.estimator.c_str(), opt(ev_f.estimator_file),
        opt(ev_f.library), opt(ev_f.ordering), ev_trials, ev_f.seed,
        ev_label.c_str(), opt(ev_metrics), opt(ev_trials_csv), &rate);
    if (st != PROGSS_OK) return report(st);
    std::printf("success_rate %.6f\n", rate);
    return 0;
  }
  if (ex->parsed())
    return report(progss_export(ex_in.c_str(), ex_out.c_str()));
  return 1;
}
