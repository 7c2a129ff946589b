#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sim/world.hpp"

namespace progss {

// A waypoint is an absolute tool target. The unroller emits motion ticks
// until the target is reached, then one tick carrying the suction edge (if
// any), then `dwell` hold ticks.
struct Waypoint {
  Pose4 target{};
  int suction = 0;
  int dwell = 0;
};

// which sim predicates gate a skill, and which shaping term the oracle uses
enum class TaskRole { Flip, Pick, Pack, Push, None };

// lowest height at which lateral transits never touch a flat object
inline double safe_transit_z(const SimParams& p) {
  return p.object_h + p.contact_eps + 0.005;
}

struct SkillSpec {
  int id = 0;
  std::string name;
  double theta = 0.9;   // progress threshold for selection
  int segments = 1;
  TaskRole role = TaskRole::None;
};

using PlannerFn = std::function<std::vector<Waypoint>(
    const Observation&, const GoalSpec&, const SimParams&, int segment)>;
// tight completion check used by the demonstration generator
using DoneFn = std::function<bool(const WorldState&, const GoalSpec&,
                                  const SimParams&, int segment)>;

struct PolicyBank {
  std::vector<SkillSpec> skills;
  std::vector<PlannerFn> planners;
  std::vector<DoneFn> done;

  size_t size() const { return skills.size(); }
  const SkillSpec* find(const std::string& name) const;
};

// flip, pick, pack, push(orientation, position)
PolicyBank default_bank();

// Append-only registration; ids stay dense 0..N-1. Returns the new id.
// Existing entries are never touched, so prior planning is unaffected.
int register_skill(PolicyBank& bank, SkillSpec spec, PlannerFn planner,
                   DoneFn done);

// a harmless hover-and-probe skill, used to exercise bank expansion
int register_probe_skill(PolicyBank& bank);

// actions.size() == horizon always; indices >= plan_len are hold padding
struct Chunk {
  std::vector<Action> actions;
  int plan_len = 0;
};

// Plans the next `horizon` actions from the current observation by unrolling
// the skill's waypoints open loop. Deterministic for fixed inputs and seed;
// sigma adds zero-mean Gaussian jitter to emitted position targets.
Chunk plan_chunk(const PolicyBank& bank, int skill, int segment,
                 const Observation& obs, const GoalSpec& goal,
                 const SimParams& p, int horizon, double sigma, uint64_t seed);

}  // namespace progss
