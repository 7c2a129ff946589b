#include "progss/progss.h"

#include <cstring>
#include <string>

#include "core/error.hpp"
#include "pipeline/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

progss_status to_status(progss::ErrorCode code) {
  return code == progss::ErrorCode::Io ? PROGSS_ERR_IO : PROGSS_ERR_VALIDATION;
}

template <typename Fn>
progss_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PROGSS_OK;
  } catch (const progss::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PROGSS_ERR_VALIDATION;
  }
}

progss_status usage_error(const char* what) {
  g_last_error = what;
  return PROGSS_ERR_USAGE;
}

std::string opt(const char* s) { return s ? std::string(s) : std::string(); }

}  // namespace

struct progss_scenario {
  progss::ScenarioConfig cfg;
};

struct progss_sim {
  progss::ScenarioConfig cfg;
  progss::WorldState world;
};

struct progss_library {
  progss::SequenceLibrary lib;
  std::vector<double> thresholds;
};

extern "C" {

const char* progss_last_error(void) { return g_last_error.c_str(); }

void progss_string_free(char* text) { delete[] text; }

progss_status progss_scenario_load(const char* path, progss_scenario** out) {
  if (!path || !out) return usage_error("progss_scenario_load: null argument");
  return guarded([&] {
    auto* sc = new progss_scenario{progss::load_scenario(path)};
    *out = sc;
  });
}

progss_status progss_scenario_from_json(const char* text,
                                        progss_scenario** out) {
  if (!text || !out)
    return usage_error("progss_scenario_from_json: null argument");
  return guarded([&] {
    auto* sc = new progss_scenario{progss::scenario_from_json_text(text)};
    *out = sc;
  });
}

progss_status progss_scenario_set_goal(progss_scenario* sc,
                                       const char* corner) {
  if (!sc || !corner)
    return usage_error("progss_scenario_set_goal: null argument");
  return guarded([&] {
    auto parsed = progss::parse_corner(corner);
    if (!parsed)
      progss::fail(progss::ErrorCode::Validation,
                   std::string("unknown goal corner \"") + corner +
                       "\" (bl, br, tl, tr)");
    sc->cfg.goal.corner = *parsed;
  });
}

progss_status progss_scenario_set_seed_noise(progss_scenario* sc,
                                             double sigma) {
  if (!sc) return usage_error("progss_scenario_set_seed_noise: null handle");
  return guarded([&] {
    if (sigma < 0.0)
      progss::fail(progss::ErrorCode::Validation,
                   "noise sigma must be non-negative");
    sc->cfg.noise_sigma = sigma;
  });
}

progss_status progss_scenario_to_json(const progss_scenario* sc, char** out) {
  if (!sc || !out) return usage_error("progss_scenario_to_json: null argument");
  return guarded([&] {
    std::string text = progss::scenario_to_json_text(sc->cfg);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void progss_scenario_free(progss_scenario* sc) { delete sc; }

progss_status progss_generate(const progss_scenario* sc, const char* orderings,
                              int per_ordering, uint64_t seed,
                              const char* out_path) {
  if (!sc || !orderings || !out_path)
    return usage_error("progss_generate: null argument");
  return guarded([&] {
    progss::op_generate(sc->cfg, orderings, per_ordering, seed, out_path);
  });
}

progss_status progss_annotate(const char* demos_path, int k_dilation,
                              const char* out_path) {
  if (!demos_path || !out_path)
    return usage_error("progss_annotate: null argument");
  return guarded(
      [&] { progss::op_annotate(demos_path, k_dilation, out_path); });
}

progss_status progss_fit(const char* annotated_path, int k,
                         const char* out_path) {
  if (!annotated_path || !out_path)
    return usage_error("progss_fit: null argument");
  return guarded([&] { progss::op_fit(annotated_path, k, out_path); });
}

progss_status progss_build_library(const char* annotated_path,
                                   const char* out_path) {
  if (!annotated_path || !out_path)
    return usage_error("progss_build_library: null argument");
  return guarded([&] { progss::op_build_library(annotated_path, out_path); });
}

progss_status progss_run(const progss_scenario* sc, const char* estimator,
                         const char* estimator_path, const char* library_path,
                         const char* ordering, uint64_t seed,
                         const char* trace_csv, const char* decisions_csv,
                         int* out_success) {
  if (!sc || !estimator) return usage_error("progss_run: null argument");
  return guarded([&] {
    progss::RunRequest req;
    req.scenario = sc->cfg;
    req.estimator = estimator;
    req.estimator_path = opt(estimator_path);
    req.library_path = opt(library_path);
    req.ordering = opt(ordering);
    req.seed = seed;
    progss::EpisodeResult ep =
        progss::op_run(req, opt(trace_csv), opt(decisions_csv));
    if (out_success) *out_success = ep.success ? 1 : 0;
  });
}

progss_status progss_evaluate(const progss_scenario* sc, const char* estimator,
                              const char* estimator_path,
                              const char* library_path, const char* ordering,
                              int trials, uint64_t seed, const char* label,
                              const char* metrics_csv, const char* trials_csv,
                              double* out_success_rate) {
  if (!sc || !estimator || !label)
    return usage_error("progss_evaluate: null argument");
  return guarded([&] {
    progss::RunRequest req;
    req.scenario = sc->cfg;
    req.estimator = estimator;
    req.estimator_path = opt(estimator_path);
    req.library_path = opt(library_path);
    req.ordering = opt(ordering);
    req.seed = seed;
    progss::EvalSummary sum = progss::op_evaluate(
        req, trials, label, opt(metrics_csv), opt(trials_csv));
    if (out_success_rate) *out_success_rate = sum.success_rate;
  });
}

progss_status progss_export(const char* dataset_path, const char* out_csv) {
  if (!dataset_path || !out_csv)
    return usage_error("progss_export: null argument");
  return guarded([&] { progss::op_export(dataset_path, out_csv); });
}

progss_status progss_sim_create(const progss_scenario* sc, uint64_t seed,
                                progss_sim** out) {
  if (!sc || !out) return usage_error("progss_sim_create: null argument");
  return guarded([&] {
    auto* sim = new progss_sim{sc->cfg, progss::spawn(sc->cfg, seed)};
    *out = sim;
  });
}

progss_status progss_sim_step(progss_sim* sim, double x, double y, double z,
                              double yaw, int suction) {
  if (!sim) return usage_error("progss_sim_step: null handle");
  return guarded([&] {
    if (suction < -1 || suction > 1)
      progss::fail(progss::ErrorCode::Validation,
                   "suction must be -1, 0 or +1");
    progss::Action a{{x, y, z, yaw}, suction};
    sim->world = progss::step(sim->world, a, sim->cfg.sim);
  });
}

progss_status progss_sim_observe(const progss_sim* sim, double* out,
                                 size_t len) {
  if (!sim || !out) return usage_error("progss_sim_observe: null argument");
  if (len != PROGSS_OBS_DIM)
    return usage_error("progss_sim_observe: len must be PROGSS_OBS_DIM");
  return guarded([&] {
    progss::Observation o = progss::observe(sim->world, sim->cfg.sim);
    out[0] = static_cast<double>(o.tick);
    out[1] = o.robot.x;
    out[2] = o.robot.y;
    out[3] = o.robot.z;
    out[4] = o.robot.yaw;
    out[5] = o.suction_on ? 1.0 : 0.0;
    out[6] = o.object.x;
    out[7] = o.object.y;
    out[8] = o.object.z;
    out[9] = o.object.yaw;
    out[10] = o.upright ? 1.0 : 0.0;
    out[11] = o.attached ? 1.0 : 0.0;
    out[12] = o.contact ? 1.0 : 0.0;
    out[13] = o.tote == progss::ToteId::Picking    ? 0.0
              : o.tote == progss::ToteId::Packing ? 1.0
                                                   : 2.0;
  });
}

void progss_sim_free(progss_sim* sim) { delete sim; }

progss_status progss_library_load(const char* path, progss_library** out) {
  if (!path || !out) return usage_error("progss_library_load: null argument");
  return guarded([&] {
    auto* lib = new progss_library{progss::load_library(path), {}};
    *out = lib;
  });
}

progss_status progss_library_n_skills(const progss_library* lib, int* out) {
  if (!lib || !out)
    return usage_error("progss_library_n_skills: null argument");
  *out = lib->lib.n_skills;
  return PROGSS_OK;
}

progss_status progss_library_select(const progss_library* lib,
                                    const double* rho, size_t n, double theta,
                                    int prev_sequence, double delta,
                                    int* out_complete, int* out_skill,
                                    int* out_segment, int* out_sequence) {
  if (!lib || !rho || !out_complete || !out_skill || !out_segment ||
      !out_sequence)
    return usage_error("progss_library_select: null argument");
  return guarded([&] {
    std::vector<double> r(rho, rho + n);
    std::vector<double> thetas(lib->lib.n_skills, theta);
    progss::MultiSelection ms =
        progss::select_multi(lib->lib, r, thetas, prev_sequence, delta);
    *out_complete = ms.sel.complete ? 1 : 0;
    *out_skill = ms.sel.complete ? -1 : ms.sel.skill;
    *out_segment = ms.sel.complete ? -1 : ms.sel.segment;
    *out_sequence = ms.sequence;
  });
}

void progss_library_free(progss_library* lib) { delete lib; }

}  // extern "C"
