#include "annotation/annotate.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace progss {

namespace {

constexpr double kMoveEps = 1e-3;

bool object_pose_changed(const Observation& a, const Observation& b) {
  double d = std::max({std::abs(b.object.x - a.object.x),
                       std::abs(b.object.y - a.object.y),
                       std::abs(b.object.z - a.object.z),
                       0.1 * std::abs(wrap_angle(b.object.yaw - a.object.yaw))});
  return d > kMoveEps || a.upright != b.upright;
}

// last step index inside the window marked with the given segment, -1 if none
int64_t last_marked(const Demonstration& demo, const GtWindow& w, int skill,
                    int segment) {
  for (int64_t i = w.end; i >= w.start; --i)
    if (demo.steps[i].skill == skill && demo.steps[i].segment == segment)
      return i;
  return -1;
}

}  // namespace

double compute_alpha(int64_t duration, int64_t max_duration) {
  if (duration < 1)
    fail(ErrorCode::Validation, "window duration must be at least one tick");
  if (max_duration < 1)
    fail(ErrorCode::Validation, "maximum duration must be at least one tick");
  if (duration > max_duration)
    fail(ErrorCode::DurationExceedsMax,
         "window duration " + std::to_string(duration) +
             " exceeds the dataset maximum " + std::to_string(max_duration));
  return 1.0 - static_cast<double>(duration) / static_cast<double>(max_duration);
}

std::vector<double> segment_bounds(double alpha,
                                   const std::vector<int64_t>& durations) {
  if (durations.empty())
    fail(ErrorCode::Validation, "segment durations must not be empty");
  if (!(alpha >= 0.0 && alpha < 1.0))
    fail(ErrorCode::Validation, "alpha must lie in [0, 1)");
  int64_t total = 0;
  for (int64_t d : durations) {
    if (d < 1)
      fail(ErrorCode::Validation, "segment durations must be positive");
    total += d;
  }
  std::vector<double> bounds(durations.size());
  int64_t cum = 0;
  for (size_t j = 0; j < durations.size(); ++j) {
    cum += durations[j];
    bounds[j] = alpha + (1.0 - alpha) * static_cast<double>(cum) /
                            static_cast<double>(total);
  }
  bounds.back() = 1.0;
  return bounds;
}

std::vector<int> dilate_suction(const std::vector<int>& events, int k) {
  if (k < 0) fail(ErrorCode::Validation, "dilation radius must be >= 0");
  int n = static_cast<int>(events.size());
  std::vector<int> out(events.size(), 0);
  for (int i = 0; i < n; ++i) {
    int best_j = -1, best_d = k + 1;
    for (int j = std::max(0, i - k); j <= std::min(n - 1, i + k); ++j) {
      if (events[j] == 0) continue;
      int d = std::abs(i - j);
      if (d < best_d) {  // ties keep the earlier event
        best_d = d;
        best_j = j;
      }
    }
    if (best_j >= 0) out[i] = events[best_j];
  }
  return out;
}

std::vector<GtWindow> detect_windows(const Demonstration& demo) {
  const auto& steps = demo.steps;
  std::vector<GtWindow> out(demo.ordering.size());
  int64_t phase_start = 0;
  for (size_t k = 0; k < demo.ordering.size(); ++k) {
    int skill = demo.ordering[k];
    int64_t p0 = phase_start, p1 = p0 - 1;
    while (p1 + 1 < static_cast<int64_t>(steps.size()) &&
           steps[p1 + 1].skill == skill)
      ++p1;
    if (p1 < p0)
      fail(ErrorCode::NoContactFound,
           "demonstration has no phase for ordering entry " +
               std::to_string(k));
    phase_start = p1 + 1;

    auto active = [&](int64_t i) {
      int64_t lo = std::max(p0, i - 5);
      for (int64_t j = lo; j <= i; ++j) {
        if (steps[j].act.suction != 0) return true;
        if (j > 0 && object_pose_changed(steps[j - 1].obs, steps[j].obs))
          return true;
      }
      return false;
    };

    GtWindow w;
    for (int64_t i = p0; i <= p1; ++i) {
      if (!steps[i].obs.contact) continue;
      if (w.start < 0) w.start = i;
      if (active(i)) w.end = i;
    }
    if (w.start < 0 || w.end < w.start)
      fail(ErrorCode::NoContactFound,
           "no active contact window for ordering entry " + std::to_string(k));
    out[k] = w;
  }
  return out;
}

DatasetStats compute_dataset_stats(
    const std::vector<Demonstration>& demos,
    const std::vector<std::vector<GtWindow>>& windows,
    const std::vector<int>& segments_per_skill) {
  if (windows.size() != demos.size())
    fail(ErrorCode::Validation, "windows must parallel the demonstrations");
  int n = static_cast<int>(segments_per_skill.size());
  if (n < 1) fail(ErrorCode::Validation, "need at least one skill");

  DatasetStats st;
  st.n_skills = n;
  st.demo_count = static_cast<int64_t>(demos.size());
  st.max_duration.assign(n, 0);
  st.alpha_median.assign(n, 1.0);
  st.coverage.assign(n, 0.0);
  st.mean_segment_duration.resize(n);

  std::vector<std::vector<int64_t>> durations(n);
  std::vector<std::vector<int64_t>> seg_sum(n);
  std::vector<int64_t> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (segments_per_skill[s] < 1)
      fail(ErrorCode::Validation, "every skill needs at least one segment");
    seg_sum[s].assign(segments_per_skill[s], 0);
  }

  for (size_t d = 0; d < demos.size(); ++d) {
    const Demonstration& demo = demos[d];
    if (windows[d].size() != demo.ordering.size())
      fail(ErrorCode::Validation, "window list does not match the ordering");
    for (size_t k = 0; k < demo.ordering.size(); ++k) {
      int s = demo.ordering[k];
      if (s < 0 || s >= n)
        fail(ErrorCode::Validation, "demonstration references unknown skill");
      const GtWindow& w = windows[d][k];
      if (w.start < 0 || w.end < w.start ||
          w.end >= static_cast<int64_t>(demo.steps.size()))
        fail(ErrorCode::Validation, "malformed manipulation window");
      durations[s].push_back(w.end - w.start + 1);
      ++seen[s];
      int64_t prev = w.start - 1;
      for (int j = 0; j < segments_per_skill[s]; ++j) {
        int64_t m = last_marked(demo, w, s, j);
        if (m > prev) {
          seg_sum[s][j] += m - prev;
          prev = m;
        }
      }
    }
  }

  for (int s = 0; s < n; ++s) {
    st.mean_segment_duration[s].assign(segments_per_skill[s], 1);
    if (seen[s] == 0) continue;
    st.max_duration[s] =
        *std::max_element(durations[s].begin(), durations[s].end());
    for (int j = 0; j < segments_per_skill[s]; ++j) {
      int64_t mean = std::llround(static_cast<double>(seg_sum[s][j]) /
                                  static_cast<double>(seen[s]));
      st.mean_segment_duration[s][j] = std::max<int64_t>(1, mean);
    }
    std::vector<double> alphas;
    alphas.reserve(durations[s].size());
    for (int64_t t : durations[s])
      alphas.push_back(compute_alpha(t, st.max_duration[s]));
    std::sort(alphas.begin(), alphas.end());
    size_t m = alphas.size() / 2;
    st.alpha_median[s] = alphas.size() % 2 == 1
                             ? alphas[m]
                             : 0.5 * (alphas[m - 1] + alphas[m]);
    st.coverage[s] = static_cast<double>(seen[s]) /
                     static_cast<double>(std::max<int64_t>(1, st.demo_count));
  }
  return st;
}

AnnotatedDemo annotate(const Demonstration& demo,
                       const std::vector<GtWindow>& windows,
                       const DatasetStats& stats, int k_dilation) {
  if (windows.size() != demo.ordering.size())
    fail(ErrorCode::Validation, "window list does not match the ordering");
  int n = stats.n_skills;
  AnnotatedDemo out;
  out.windows = windows;
  out.alpha.assign(demo.ordering.size(), 0.0);
  out.progress.assign(demo.steps.size(), std::vector<double>(n, 1.0));

  for (size_t k = 0; k < demo.ordering.size(); ++k) {
    int s = demo.ordering[k];
    if (s < 0 || s >= n)
      fail(ErrorCode::Validation, "demonstration references unknown skill");
    const GtWindow& w = windows[k];
    double alpha = compute_alpha(w.end - w.start + 1, stats.max_duration[s]);
    out.alpha[k] = alpha;
    std::vector<double> bounds =
        segment_bounds(alpha, stats.mean_segment_duration[s]);
    int segments = static_cast<int>(bounds.size());

    // ramp anchors: window start at alpha, each observed segment boundary at
    // its canonical bound, window end at 1
    std::vector<std::pair<int64_t, double>> anchors;
    anchors.emplace_back(w.start, alpha);
    for (int j = 0; j + 1 < segments; ++j) {
      int64_t m = last_marked(demo, w, s, j);
      if (m > anchors.back().first && m < w.end) anchors.emplace_back(m, bounds[j]);
    }
    anchors.emplace_back(w.end, 1.0);

    for (int64_t i = 0; i < static_cast<int64_t>(demo.steps.size()); ++i) {
      double v;
      if (i < w.start) {
        v = alpha;
      } else if (i >= w.end) {
        v = 1.0;
      } else {
        size_t a = 0;
        while (a + 2 < anchors.size() && anchors[a + 1].first < i) ++a;
        auto [x0, y0] = anchors[a];
        auto [x1, y1] = anchors[a + 1];
        v = y0 + (y1 - y0) * static_cast<double>(i - x0) /
                     static_cast<double>(x1 - x0);
      }
      out.progress[i][s] = clamp01(v);
    }
  }

  std::vector<int> events(demo.steps.size(), 0);
  for (size_t i = 0; i < demo.steps.size(); ++i)
    events[i] = demo.steps[i].act.suction;
  out.suction_dilated = dilate_suction(events, k_dilation);
  return out;
}

AnnotatedDataset annotate_dataset(const std::vector<Demonstration>& demos,
                                  const std::vector<int>& segments_per_skill,
                                  int k_dilation) {
  AnnotatedDataset ds;
  std::vector<std::vector<GtWindow>> windows;
  windows.reserve(demos.size());
  for (const Demonstration& d : demos) windows.push_back(detect_windows(d));
  ds.stats = compute_dataset_stats(demos, windows, segments_per_skill);
  ds.annos.reserve(demos.size());
  for (size_t i = 0; i < demos.size(); ++i)
    ds.annos.push_back(annotate(demos[i], windows[i], ds.stats, k_dilation));
  return ds;
}

}  // namespace progss
