#pragma once

#include <string>
#include <vector>

#include "annotation/annotate.hpp"

namespace progss {

// piecewise-linear path through progress space that a sequence of skills
// traces when executed to completion
struct ProgressTrajectory {
  std::vector<int> ordering;
  std::vector<std::vector<double>> vertices;  // each of dimension n_skills
};

struct SequenceLibrary {
  int n_skills = 0;
  std::vector<double> alphas;               // [skill] canonical start value
  std::vector<std::vector<double>> bounds;  // [skill] segment bounds, last 1
  std::vector<ProgressTrajectory> trajectories;  // insertion order kept
};

// Canonical polyline of an ordering: the start vertex holds each member
// skill at its alpha and every other skill at 1; then the members rise to
// their segment bounds one segment at a time, in execution order.
ProgressTrajectory build_trajectory(
    const std::vector<int>& ordering, const std::vector<double>& alphas,
    const std::vector<std::vector<double>>& bounds);

// one trajectory per distinct ordering, in order of first appearance
SequenceLibrary build_library(const std::vector<Demonstration>& demos,
                              const DatasetStats& stats);

double point_segment_distance(const std::vector<double>& q,
                              const std::vector<double>& a,
                              const std::vector<double>& b);

// nearest point on the polyline; ties pick the smaller edge index
double point_polyline_distance(const std::vector<double>& q,
                               const std::vector<std::vector<double>>& vertices,
                               int* edge = nullptr);

struct NearestResult {
  int index = -1;     // trajectory index within the library
  double distance = 0.0;
  int edge = 0;       // nearest edge on that trajectory
};

// ties between trajectories resolve to the earlier library entry
NearestResult nearest_sequence(const SequenceLibrary& lib,
                               const std::vector<double>& rho);

// keeps prev_index unless some other trajectory is closer by more than delta
NearestResult nearest_sequence_hysteresis(const SequenceLibrary& lib,
                                          const std::vector<double>& rho,
                                          int prev_index, double delta);

struct Selection {
  bool complete = false;
  int skill = -1;
  int segment = 0;
};

// First skill along the ordering whose progress sits below its threshold;
// within it, the first segment j with rho < min(threshold, bound_j). All
// skills at or above threshold means the sequence is complete.
Selection select_single(const std::vector<int>& ordering,
                        const std::vector<double>& rho,
                        const std::vector<double>& thresholds,
                        const std::vector<std::vector<double>>& bounds);

struct MultiSelection {
  Selection sel;
  int sequence = -1;
  double distance = 0.0;
  int edge = 0;
};

// nearest trajectory (with optional hysteresis toward prev_sequence), then
// single-sequence selection along its ordering
MultiSelection select_multi(const SequenceLibrary& lib,
                            const std::vector<double>& rho,
                            const std::vector<double>& thresholds,
                            int prev_sequence = -1, double delta = 0.0);

std::string library_to_json_text(const SequenceLibrary& lib);
SequenceLibrary library_from_json_text(const std::string& text);
void save_library(const SequenceLibrary& lib, const std::string& path);
SequenceLibrary load_library(const std::string& path);

}  // namespace progss
