#pragma once

#include <cstdint>
#include <vector>

#include "skills/demo_gen.hpp"

namespace progss {

// remaining-progress offset for a window of `duration` ticks against the
// dataset-wide maximum; 1 <= duration <= max_duration is enforced
double compute_alpha(int64_t duration, int64_t max_duration);

// Cumulative completion value after each segment, starting from alpha and
// splitting the remaining 1-alpha by duration share. The last entry is
// exactly 1.
std::vector<double> segment_bounds(double alpha,
                                   const std::vector<int64_t>& durations);

// Spreads +-1 suction events over a k-neighborhood. The nearest event wins
// each position; ties go to the earlier event. k = 0 returns the input.
std::vector<int> dilate_suction(const std::vector<int>& events, int k);

// Detected manipulation window per ordering entry: first tip contact within
// the skill's phase through the last contact that still has recent activity
// (pose change above 1 mm or a suction edge in the previous five ticks).
std::vector<GtWindow> detect_windows(const Demonstration& demo);

struct DatasetStats {
  int n_skills = 0;
  int64_t demo_count = 0;
  std::vector<int64_t> max_duration;  // [skill], 0 when the skill never occurs
  std::vector<std::vector<int64_t>> mean_segment_duration;  // [skill][segment]
  std::vector<double> alpha_median;  // [skill], 1 when the skill never occurs
  std::vector<double> coverage;      // [skill], fraction of demos featuring it
};

// two passes: collect window and segment durations first, then derive the
// per-demo alphas against the final maxima
DatasetStats compute_dataset_stats(
    const std::vector<Demonstration>& demos,
    const std::vector<std::vector<GtWindow>>& windows,
    const std::vector<int>& segments_per_skill);

struct AnnotatedDemo {
  std::vector<GtWindow> windows;      // detected, parallel to ordering
  std::vector<double> alpha;          // parallel to ordering
  std::vector<std::vector<double>> progress;  // [step][skill]
  std::vector<int> suction_dilated;           // [step]
};

// Per-step progress labels for every skill in the bank. A skill's label sits
// at its alpha before the window, ramps linearly to the canonical segment
// bound at each observed segment boundary, reaches 1 at the window end and
// stays there. Skills absent from the ordering are 1 throughout.
AnnotatedDemo annotate(const Demonstration& demo,
                       const std::vector<GtWindow>& windows,
                       const DatasetStats& stats, int k_dilation);

struct AnnotatedDataset {
  DatasetStats stats;
  std::vector<AnnotatedDemo> annos;  // parallel to the input demos
};

AnnotatedDataset annotate_dataset(const std::vector<Demonstration>& demos,
                                  const std::vector<int>& segments_per_skill,
                                  int k_dilation);

}  // namespace progss
