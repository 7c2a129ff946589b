#pragma once

#include <cstdint>
#include <vector>

#include "sim/scenario.hpp"
#include "skills/bank.hpp"

namespace progss {

struct DemoStep {
  int64_t tick = 0;  // equals the step index within the demo
  Action act{};
  Observation obs{};  // observation after the action was applied
  int skill = 0;      // executed-skill marker
  int segment = 0;
};

// inclusive step-index range of tip-object contact for one ordering entry
struct GtWindow {
  int64_t start = -1;
  int64_t end = -1;
};

struct Demonstration {
  std::vector<int> ordering;  // skill ids, execution order
  uint64_t seed = 0;
  double sigma = 0.0;
  std::vector<DemoStep> steps;
  std::vector<GtWindow> windows;  // parallel to ordering
};

// Scripted rollout of `ordering` in a fresh world seeded from the scenario.
// Each segment may replan up to three chunks; a segment whose completion
// check never fires raises an infeasible-ordering error, as does a missing
// contact window or a lost postcondition at the end.
Demonstration generate_demo(const PolicyBank& bank,
                            const std::vector<int>& ordering,
                            const ScenarioConfig& sc, uint64_t seed);

}  // namespace progss
