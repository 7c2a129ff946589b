#pragma once

#include <string>
#include <utility>
#include <vector>

#include "annotation/annotate.hpp"
#include "runner/runner.hpp"

namespace progss {

const char* role_to_string(TaskRole r);
TaskRole role_from_string(const std::string& s);

// Demonstration datasets are JSON lines: one header object carrying the
// scenario and the skill roster, then per demo one metadata line followed by
// its step lines. Every line declares its kind in a "t" field.

void save_demos(const std::string& path, const ScenarioConfig& scenario,
                const std::vector<SkillSpec>& skills,
                const std::vector<Demonstration>& demos);

struct LoadedDemos {
  ScenarioConfig scenario;
  std::vector<SkillSpec> skills;
  std::vector<Demonstration> demos;
};

LoadedDemos load_demos(const std::string& path);

// annotated variant: step lines gain per-skill progress labels and the
// dilated suction channel; demo lines gain alphas and detected windows
void save_annotated(const std::string& path, const ScenarioConfig& scenario,
                    const std::vector<SkillSpec>& skills,
                    const std::vector<Demonstration>& demos,
                    const std::vector<AnnotatedDemo>& annos,
                    const DatasetStats& stats, int k_dilation);

struct LoadedAnnotated {
  ScenarioConfig scenario;
  std::vector<SkillSpec> skills;
  std::vector<Demonstration> demos;
  std::vector<AnnotatedDemo> annos;
  DatasetStats stats;
  int k_dilation = 0;
};

LoadedAnnotated load_annotated(const std::string& path);

std::string stats_to_json_text(const DatasetStats& stats);
DatasetStats stats_from_json_text(const std::string& text);

// fixed six-decimal CSV emitters, stable across runs for identical inputs
std::string trace_to_csv(const std::vector<Observation>& trace);
std::string decisions_to_csv(const std::vector<CycleRecord>& cycles,
                             int n_skills);
std::string metrics_to_csv(
    const std::vector<std::pair<std::string, EvalSummary>>& rows);
std::string trials_to_csv(const EvalSummary& summary);

}  // namespace progss
