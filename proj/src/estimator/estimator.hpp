#pragma once

#include <functional>
#include <string>
#include <vector>

#include "annotation/annotate.hpp"
#include "selector/selector.hpp"
#include "skills/bank.hpp"

namespace progss {

constexpr int kFeatureDim = 17;

// fixed observation embedding used by the learned progress estimator
std::vector<double> featurize(const Observation& obs, const GoalSpec& goal,
                              const SimParams& p);

struct KnnEstimator {
  int n_skills = 0;
  int k = 5;
  std::vector<std::vector<double>> features;
  std::vector<std::vector<double>> labels;  // [row][skill]
  std::vector<double> feat_min, feat_max;   // per-dimension scaling
};

KnnEstimator fit_knn(std::vector<std::vector<double>> features,
                     std::vector<std::vector<double>> labels, int n_skills,
                     int k = 5);

// mean label of the k nearest rows under per-dimension min-max scaling;
// distance ties resolve to the earlier row
std::vector<double> knn_predict(const KnnEstimator& est,
                                const std::vector<double>& query);

struct TrainSet {
  std::vector<std::vector<double>> features;
  std::vector<std::vector<double>> labels;
};

TrainSet make_training_set(const std::vector<Demonstration>& demos,
                           const std::vector<AnnotatedDemo>& annos,
                           const GoalSpec& goal, const SimParams& p);

void save_knn(const KnnEstimator& est, const std::string& path);
KnnEstimator load_knn(const std::string& path);

// Ground-truth-aware progress for every skill in the bank: 1 once the
// skill's postcondition holds, otherwise its alpha plus a shaped fraction of
// the remaining headroom. Skills with no task role stay pinned at 1.
std::vector<double> oracle_progress(const WorldState& w, const PolicyBank& bank,
                                    const GoalSpec& goal, const SimParams& p,
                                    const std::vector<double>& alphas);

// progress source consulted by the closed-loop runner between chunks
using ProgressFn = std::function<std::vector<double>(const WorldState&)>;

ProgressFn make_oracle_progress_fn(const PolicyBank& bank, const GoalSpec& goal,
                                   const SimParams& p,
                                   std::vector<double> alphas);

ProgressFn make_knn_progress_fn(const KnnEstimator& est, const GoalSpec& goal,
                                const SimParams& p);

}  // namespace progss
