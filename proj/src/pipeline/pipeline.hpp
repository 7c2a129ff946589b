#pragma once

#include <string>
#include <vector>

#include "data/dataset_io.hpp"

namespace progss {

// "flip,pick,pack" -> skill ids against the bank roster
std::vector<int> parse_ordering(const PolicyBank& bank,
                                const std::string& names);
// semicolon-separated list of orderings, e.g. "pick,pack;flip,pick,pack"
std::vector<std::vector<int>> parse_orderings(const PolicyBank& bank,
                                              const std::string& spec);

// Generates per_ordering feasible demonstrations for each ordering, batch by
// batch in the given order. Seeds that draw an infeasible start (for example
// an upright spawn for an ordering without the flip) are skipped
// deterministically.
std::vector<Demonstration> generate_batch(
    const PolicyBank& bank, const std::vector<std::vector<int>>& orderings,
    int per_ordering, const ScenarioConfig& sc, uint64_t seed0);

// file-to-file operations; the C interface and the CLI sit on top of these
void op_generate(const ScenarioConfig& sc, const std::string& orderings_spec,
                 int per_ordering, uint64_t seed, const std::string& out_path);
void op_annotate(const std::string& demos_path, int k_dilation,
                 const std::string& out_path);
void op_fit(const std::string& annotated_path, int k,
            const std::string& out_path);
void op_build_library(const std::string& annotated_path,
                      const std::string& out_path);

struct RunRequest {
  ScenarioConfig scenario;
  std::string estimator = "oracle";  // "oracle" or "knn"
  std::string estimator_path;        // required for knn
  std::string library_path;          // multi-sequence mode when set
  std::string ordering;              // single-sequence mode otherwise
  uint64_t seed = 0;
};

EpisodeResult op_run(const RunRequest& req, const std::string& trace_csv,
                     const std::string& decisions_csv);

EvalSummary op_evaluate(const RunRequest& req, int trials,
                        const std::string& label,
                        const std::string& metrics_csv,
                        const std::string& trials_csv);

// flattens a dataset (plain or annotated) into one CSV row per step
void op_export(const std::string& dataset_path, const std::string& out_csv);

}  // namespace progss
