#include "runner/runner.hpp"

#include <algorithm>
#include <cmath>

#include "annotation/annotate.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace progss {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::Aborted: return "aborted";
    case Outcome::TimedOut: return "timed_out";
  }
  return "unknown";
}

namespace {

bool role_postcondition(TaskRole role, const WorldState& w, const SimParams& p,
                        const GoalSpec& goal) {
  switch (role) {
    case TaskRole::Flip: return flip_done(w, p);
    case TaskRole::Pick: return pick_done(w, p);
    case TaskRole::Pack: return pack_done(w, p, goal);
    case TaskRole::Push:
      return push_orientation_done(w, p, goal) &&
             push_position_done(w, p, goal);
    case TaskRole::None: return true;
  }
  return true;
}

}  // namespace

EpisodeResult run_episode(const RunConfig& cfg, uint64_t seed) {
  if (!cfg.bank) fail(ErrorCode::Validation, "run_episode needs a skill bank");
  if (!cfg.progress)
    fail(ErrorCode::Validation, "run_episode needs a progress source");
  const ScenarioConfig& sc = cfg.scenario;
  const SimParams& p = sc.sim;
  const PolicyBank& bank = *cfg.bank;
  int n = static_cast<int>(bank.size());

  std::vector<double> thresholds(n);
  std::vector<std::vector<double>> bounds(n);
  for (int s = 0; s < n; ++s) {
    thresholds[s] = sc.threshold_for(s);
    // Without a library, segment routing splits the shaped range evenly.
    // All-one bounds would pin every multi-segment skill to its first segment.
    int segs = std::max(1, bank.skills[s].segments);
    bounds[s] = segment_bounds(0.5, std::vector<int64_t>(segs, 1));
  }
  if (cfg.library) {
    if (cfg.library->n_skills != n)
      fail(ErrorCode::DimensionMismatch,
           "library and bank disagree on the number of skills");
    bounds = cfg.library->bounds;
  } else if (cfg.ordering.empty()) {
    fail(ErrorCode::Validation,
         "single-sequence mode needs a non-empty ordering");
  }

  EpisodeResult res;
  WorldState world = spawn(sc, seed);
  res.trace.push_back(observe(world, p));

  int64_t ticks = 0;
  int64_t hold_accum = 0;
  int cycle = 0;
  int prev_sequence = -1;
  int stall_skill = -1, stall_segment = -1, stall_count = 0;
  double stall_rho = 0.0;
  bool abort_pending = false;

  Action hold_action{sc.sim.home_pose, 0};

  while (true) {
    if (ticks >= sc.max_ticks) {
      res.outcome = Outcome::TimedOut;
      break;
    }

    std::vector<double> rho = cfg.progress(world);
    if (static_cast<int>(rho.size()) != n)
      fail(ErrorCode::DimensionMismatch,
           "progress estimate does not match the bank");

    CycleRecord rec;
    rec.cycle = cycle;
    rec.decision_tick = ticks;
    rec.rho = rho;
    if (cfg.library) {
      double delta = sc.hysteresis ? sc.hysteresis_delta : 0.0;
      MultiSelection ms =
          select_multi(*cfg.library, rho, thresholds, prev_sequence, delta);
      rec.complete = ms.sel.complete;
      rec.skill = ms.sel.skill;
      rec.segment = ms.sel.segment;
      rec.sequence = ms.sequence;
      rec.distance = ms.distance;
      prev_sequence = ms.sequence;
    } else {
      Selection sel = select_single(cfg.ordering, rho, thresholds, bounds);
      rec.complete = sel.complete;
      rec.skill = sel.skill;
      rec.segment = sel.segment;
    }

    if (!rec.complete) {
      if (rec.skill == stall_skill && rec.segment == stall_segment &&
          rho[rec.skill] - stall_rho < sc.abort_min_gain) {
        ++stall_count;
      } else {
        stall_count = 1;
      }
      stall_skill = rec.skill;
      stall_segment = rec.segment;
      stall_rho = rho[rec.skill];
      if (stall_count > sc.abort_stall_cycles) abort_pending = true;
    } else {
      stall_skill = -1;
      stall_segment = -1;
      stall_count = 0;
    }

    Chunk chunk;
    if (!rec.complete)
      chunk = plan_chunk(bank, rec.skill, rec.segment, observe(world, p),
                         sc.goal, p, sc.horizon, sc.noise_sigma,
                         mix_seed(seed, 0x2000 + static_cast<uint64_t>(cycle)));

    int to_exec = static_cast<int>(
        std::min<int64_t>(sc.horizon, sc.max_ticks - ticks));
    for (int i = 0; i < to_exec; ++i) {
      const Action& act = rec.complete ? hold_action : chunk.actions[i];
      world = step(world, act, p);
      for (const Disturbance& d : sc.disturbances)
        if (d.at_tick == world.tick - 1) apply_disturbance(world, d, p);
      res.trace.push_back(observe(world, p));
      ++ticks;
    }
    rec.executed = to_exec;
    res.cycles.push_back(rec);
    ++cycle;

    if (rec.complete) {
      hold_accum += to_exec;
      if (hold_accum >= sc.hold_ticks) {
        res.outcome = Outcome::Completed;
        break;
      }
    } else {
      hold_accum = 0;
      if (abort_pending) {
        res.outcome = Outcome::Aborted;
        break;
      }
    }
  }

  res.ticks = ticks;
  res.final_state = world;
  if (res.outcome == Outcome::Completed) {
    const std::vector<int>* ordering = &cfg.ordering;
    if (cfg.library) {
      int seq = res.cycles.empty() ? -1 : res.cycles.back().sequence;
      if (seq >= 0) ordering = &cfg.library->trajectories[seq].ordering;
    }
    bool ok = true;
    for (int s : *ordering)
      ok = ok && role_postcondition(bank.skills[s].role, world, p, sc.goal);
    res.success = ok;
  }
  res.execution_ticks = execution_time(res.trace, sc.goal, p, sc.hold_ticks);
  return res;
}

int64_t execution_time(const std::vector<Observation>& trace,
                       const GoalSpec& goal, const SimParams& p,
                       int64_t settle) {
  if (settle < 1) fail(ErrorCode::Validation, "settle window must be positive");
  Pose4 target = goal.target_pose(p);
  int64_t run = 0;
  for (int64_t i = 0; i < static_cast<int64_t>(trace.size()); ++i) {
    bool ok = planar_dist(trace[i].object, target) <= p.pos_tol &&
              std::abs(wrap_angle(trace[i].object.yaw - target.yaw)) <=
                  p.yaw_tol;
    run = ok ? run + 1 : 0;
    if (run >= settle) return i - settle + 1;
  }
  return -1;
}

EvalSummary evaluate(const RunConfig& cfg, int trials, uint64_t seed0) {
  if (trials < 1) fail(ErrorCode::Validation, "need at least one trial");
  EvalSummary sum;
  sum.trials = trials;
  double tick_total = 0.0, exec_total = 0.0;
  int exec_count = 0;
  for (int i = 0; i < trials; ++i) {
    uint64_t seed = mix_seed(seed0, static_cast<uint64_t>(i));
    EpisodeResult ep = run_episode(cfg, seed);
    TrialResult tr;
    tr.seed = seed;
    tr.outcome = ep.outcome;
    tr.success = ep.success;
    tr.ticks = ep.ticks;
    tr.execution_ticks = ep.execution_ticks;
    tr.cycles = static_cast<int>(ep.cycles.size());
    Pose4 target = cfg.scenario.goal.target_pose(cfg.scenario.sim);
    tr.final_dist = planar_dist(ep.final_state.object.pose, target);
    tr.final_yaw_err =
        std::abs(wrap_angle(ep.final_state.object.pose.yaw - target.yaw));
    const SimParams& p = cfg.scenario.sim;
    tr.post_flip = flip_done(ep.final_state, p);
    tr.post_pick = pick_done(ep.final_state, p);
    tr.post_pack = pack_done(ep.final_state, p, cfg.scenario.goal);
    tr.post_push_orientation =
        push_orientation_done(ep.final_state, p, cfg.scenario.goal);
    tr.post_push_position =
        push_position_done(ep.final_state, p, cfg.scenario.goal);
    if (ep.outcome == Outcome::Aborted) ++sum.aborted;
    if (ep.outcome == Outcome::TimedOut) ++sum.timed_out;
    if (ep.success) ++sum.successes;
    tick_total += static_cast<double>(ep.ticks);
    if (ep.success && ep.execution_ticks >= 0) {
      exec_total += static_cast<double>(ep.execution_ticks);
      ++exec_count;
    }
    sum.rows.push_back(tr);
  }
  sum.success_rate =
      static_cast<double>(sum.successes) / static_cast<double>(trials);
  sum.mean_ticks = tick_total / static_cast<double>(trials);
  sum.mean_execution_ticks =
      exec_count > 0 ? exec_total / static_cast<double>(exec_count) : -1.0;
  return sum;
}

}  // namespace progss
