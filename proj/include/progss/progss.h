#ifndef PROGSS_H
#define PROGSS_H

/* Progress-guided skill sequencing toolkit: C interface.
 *
 * Every function returns a status code; on failure progss_last_error()
 * describes the most recent error on the calling thread. Out-parameters are
 * only written on PROGSS_OK. Strings returned through char** must be
 * released with progss_string_free, handles with their matching _free call.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum progss_status {
  PROGSS_OK = 0,
  PROGSS_ERR_USAGE = 1,      /* null handles, malformed argument wiring */
  PROGSS_ERR_VALIDATION = 2, /* content that fails validation */
  PROGSS_ERR_IO = 3          /* file system failures */
} progss_status;

const char* progss_last_error(void);
void progss_string_free(char* text);

/* ---- scenario configuration ------------------------------------------- */

typedef struct progss_scenario progss_scenario;

progss_status progss_scenario_load(const char* path, progss_scenario** out);
progss_status progss_scenario_from_json(const char* text,
                                        progss_scenario** out);
/* corner is one of "bl", "br", "tl", "tr" */
progss_status progss_scenario_set_goal(progss_scenario* sc, const char* corner);
progss_status progss_scenario_set_seed_noise(progss_scenario* sc,
                                             double sigma);
progss_status progss_scenario_to_json(const progss_scenario* sc, char** out);
void progss_scenario_free(progss_scenario* sc);

/* ---- pipeline stages ---------------------------------------------------
 * orderings: semicolon-separated skill-name lists, e.g.
 * "pick,pack;flip,pick,pack". Skills are the built-in bank: flip, pick,
 * pack, push. */

progss_status progss_generate(const progss_scenario* sc, const char* orderings,
                              int per_ordering, uint64_t seed,
                              const char* out_path);
progss_status progss_annotate(const char* demos_path, int k_dilation,
                              const char* out_path);
progss_status progss_fit(const char* annotated_path, int k,
                         const char* out_path);
progss_status progss_build_library(const char* annotated_path,
                                   const char* out_path);

/* estimator: "oracle" (estimator_path ignored, may be NULL) or "knn"
 * (estimator_path required). Exactly one of library_path (multi-sequence)
 * or ordering (single-sequence) must be given; pass NULL for the other.
 * trace_csv / decisions_csv / trials_csv may be NULL to skip the export. */

progss_status progss_run(const progss_scenario* sc, const char* estimator,
                         const char* estimator_path, const char* library_path,
                         const char* ordering, uint64_t seed,
                         const char* trace_csv, const char* decisions_csv,
                         int* out_success);

progss_status progss_evaluate(const progss_scenario* sc, const char* estimator,
                              const char* estimator_path,
                              const char* library_path, const char* ordering,
                              int trials, uint64_t seed, const char* label,
                              const char* metrics_csv, const char* trials_csv,
                              double* out_success_rate);

progss_status progss_export(const char* dataset_path, const char* out_csv);

/* ---- interactive simulation --------------------------------------------
 * progss_sim_step drives one tick toward an absolute tool target; suction
 * is -1 (release), 0 (hold) or +1 (engage). progss_sim_observe fills
 * exactly PROGSS_OBS_DIM doubles:
 * [tick, robot x, y, z, yaw, suction_on, object x, y, z, yaw, upright,
 *  attached, contact, tote(0 picking, 1 packing, 2 neither)] */

#define PROGSS_OBS_DIM 14

typedef struct progss_sim progss_sim;

progss_status progss_sim_create(const progss_scenario* sc, uint64_t seed,
                                progss_sim** out);
progss_status progss_sim_step(progss_sim* sim, double x, double y, double z,
                              double yaw, int suction);
progss_status progss_sim_observe(const progss_sim* sim, double* out,
                                 size_t len);
void progss_sim_free(progss_sim* sim);

/* ---- sequence library selection ---------------------------------------- */

typedef struct progss_library progss_library;

progss_status progss_library_load(const char* path, progss_library** out);
progss_status progss_library_n_skills(const progss_library* lib, int* out);
/* rho: per-skill progress estimates in [0, 1]. prev_sequence < 0 disables
 * hysteresis. On completion *out_skill and *out_segment are -1. */
progss_status progss_library_select(const progss_library* lib,
                                    const double* rho, size_t n, double theta,
                                    int prev_sequence, double delta,
                                    int* out_complete, int* out_skill,
                                    int* out_segment, int* out_sequence);
void progss_library_free(progss_library* lib);

#ifdef __cplusplus
}
#endif

#endif /* PROGSS_H */
