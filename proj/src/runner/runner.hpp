#pragma once

#include <cstdint>
#include <vector>

#include "estimator/estimator.hpp"

namespace progss {

enum class Outcome { Completed, Aborted, TimedOut };
const char* to_string(Outcome o);

struct CycleRecord {
  int cycle = 0;
  int64_t decision_tick = 0;     // ticks executed before this decision
  std::vector<double> rho;       // estimate the decision was based on
  bool complete = false;
  int skill = -1;
  int segment = 0;
  int sequence = -1;             // -1 in single-sequence mode
  double distance = 0.0;         // nearest-trajectory distance, multi mode
  int executed = 0;              // ticks executed for this decision
};

struct EpisodeResult {
  Outcome outcome = Outcome::TimedOut;
  bool success = false;          // completed and all postconditions hold
  int64_t ticks = 0;
  int64_t execution_ticks = -1;  // first tick of the settled tail, -1 if none
  std::vector<CycleRecord> cycles;
  std::vector<Observation> trace;  // initial state plus one entry per tick
  WorldState final_state;
};

struct RunConfig {
  const PolicyBank* bank = nullptr;
  ScenarioConfig scenario;
  ProgressFn progress;
  std::vector<int> ordering;              // single-sequence mode
  const SequenceLibrary* library = nullptr;  // multi-sequence when set
};

// Closed loop: estimate progress, pick skill and segment, execute one
// planned chunk open loop, repeat. Every decision is followed by a full
// chunk except when the tick budget truncates the last one, so the decision
// count is always ceil(ticks / horizon).
EpisodeResult run_episode(const RunConfig& cfg, uint64_t seed);

// smallest tick index whose next `settle` trace entries all hold the object
// within goal tolerances; -1 when no such window exists
int64_t execution_time(const std::vector<Observation>& trace,
                       const GoalSpec& goal, const SimParams& p,
                       int64_t settle);

struct TrialResult {
  uint64_t seed = 0;
  Outcome outcome = Outcome::TimedOut;
  bool success = false;
  int64_t ticks = 0;
  int64_t execution_ticks = -1;
  int cycles = 0;
  double final_dist = 0.0;
  double final_yaw_err = 0.0;
  // raw task predicates at the final state, reported for every trial
  bool post_flip = false;
  bool post_pick = false;
  bool post_pack = false;
  bool post_push_orientation = false;
  bool post_push_position = false;
};

struct EvalSummary {
  int trials = 0;
  int successes = 0;
  int aborted = 0;
  int timed_out = 0;
  double success_rate = 0.0;
  double mean_ticks = 0.0;
  double mean_execution_ticks = -1.0;  // over settled successes, -1 if none
  std::vector<TrialResult> rows;
};

// sequential deterministic trials with seeds derived from seed0
EvalSummary evaluate(const RunConfig& cfg, int trials, uint64_t seed0);

}  // namespace progss
