#include "selector/selector.hpp"

#include <cmath>

#include "core/error.hpp"
#include "data/json_util.hpp"

namespace progss {

namespace {

void check_dim(const std::vector<double>& v, int n, const char* what) {
  if (static_cast<int>(v.size()) != n)
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": expected dimension " + std::to_string(n) +
             ", got " + std::to_string(v.size()));
}

}  // namespace

ProgressTrajectory build_trajectory(
    const std::vector<int>& ordering, const std::vector<double>& alphas,
    const std::vector<std::vector<double>>& bounds) {
  int n = static_cast<int>(alphas.size());
  if (static_cast<int>(bounds.size()) != n)
    fail(ErrorCode::DimensionMismatch, "bounds must parallel alphas");
  if (ordering.empty())
    fail(ErrorCode::Validation, "ordering must not be empty");

  ProgressTrajectory traj;
  traj.ordering = ordering;
  std::vector<double> v(alphas.size(), 1.0);
  for (int s : ordering) {
    if (s < 0 || s >= n)
      fail(ErrorCode::Validation, "ordering references unknown skill");
    v[s] = alphas[s];
  }
  traj.vertices.push_back(v);
  for (int s : ordering) {
    for (double b : bounds[s]) {
      v[s] = b;
      traj.vertices.push_back(v);
    }
  }
  return traj;
}

SequenceLibrary build_library(const std::vector<Demonstration>& demos,
                              const DatasetStats& stats) {
  if (demos.empty())
    fail(ErrorCode::EmptyLibrary, "cannot build a library from zero demonstrations");
  SequenceLibrary lib;
  lib.n_skills = stats.n_skills;
  lib.alphas = stats.alpha_median;
  lib.bounds.resize(stats.n_skills);
  for (int s = 0; s < stats.n_skills; ++s) {
    if (stats.alpha_median[s] < 1.0)
      lib.bounds[s] =
          segment_bounds(stats.alpha_median[s], stats.mean_segment_duration[s]);
    else
      lib.bounds[s].assign(stats.mean_segment_duration[s].size(), 1.0);
  }
  for (const Demonstration& d : demos) {
    bool known = false;
    for (const ProgressTrajectory& t : lib.trajectories)
      if (t.ordering == d.ordering) {
        known = true;
        break;
      }
    if (!known)
      lib.trajectories.push_back(
          build_trajectory(d.ordering, lib.alphas, lib.bounds));
  }
  return lib;
}

double point_segment_distance(const std::vector<double>& q,
                              const std::vector<double>& a,
                              const std::vector<double>& b) {
  double dd = 0.0, qd = 0.0;
  for (size_t i = 0; i < q.size(); ++i) {
    double d = b[i] - a[i];
    dd += d * d;
    qd += (q[i] - a[i]) * d;
  }
  double t = dd > 0.0 ? std::clamp(qd / dd, 0.0, 1.0) : 0.0;
  double dist2 = 0.0;
  for (size_t i = 0; i < q.size(); ++i) {
    double e = q[i] - (a[i] + t * (b[i] - a[i]));
    dist2 += e * e;
  }
  return std::sqrt(dist2);
}

double point_polyline_distance(const std::vector<double>& q,
                               const std::vector<std::vector<double>>& vertices,
                               int* edge) {
  if (vertices.empty())
    fail(ErrorCode::Validation, "polyline needs at least one vertex");
  if (vertices.size() == 1) {
    if (edge) *edge = 0;
    return point_segment_distance(q, vertices[0], vertices[0]);
  }
  double best = 0.0;
  int best_edge = -1;
  for (size_t i = 0; i + 1 < vertices.size(); ++i) {
    double d = point_segment_distance(q, vertices[i], vertices[i + 1]);
    if (best_edge < 0 || d < best) {
      best = d;
      best_edge = static_cast<int>(i);
    }
  }
  if (edge) *edge = best_edge;
  return best;
}

NearestResult nearest_sequence(const SequenceLibrary& lib,
                               const std::vector<double>& rho) {
  if (lib.trajectories.empty())
    fail(ErrorCode::EmptyLibrary, "the sequence library is empty");
  check_dim(rho, lib.n_skills, "progress estimate");
  NearestResult best;
  for (size_t i = 0; i < lib.trajectories.size(); ++i) {
    int edge = 0;
    double d = point_polyline_distance(rho, lib.trajectories[i].vertices, &edge);
    if (best.index < 0 || d < best.distance) {
      best = {static_cast<int>(i), d, edge};
    }
  }
  return best;
}

NearestResult nearest_sequence_hysteresis(const SequenceLibrary& lib,
                                          const std::vector<double>& rho,
                                          int prev_index, double delta) {
  NearestResult best = nearest_sequence(lib, rho);
  if (prev_index < 0 ||
      prev_index >= static_cast<int>(lib.trajectories.size()) ||
      best.index == prev_index)
    return best;
  int edge = 0;
  double prev_d =
      point_polyline_distance(rho, lib.trajectories[prev_index].vertices, &edge);
  if (best.distance < prev_d - delta) return best;
  return {prev_index, prev_d, edge};
}

Selection select_single(const std::vector<int>& ordering,
                        const std::vector<double>& rho,
                        const std::vector<double>& thresholds,
                        const std::vector<std::vector<double>>& bounds) {
  if (rho.size() != thresholds.size() || bounds.size() != rho.size())
    fail(ErrorCode::DimensionMismatch,
         "progress, thresholds and bounds must share one dimension");
  for (int s : ordering) {
    if (s < 0 || s >= static_cast<int>(rho.size()))
      fail(ErrorCode::Validation, "ordering references unknown skill");
    if (rho[s] >= thresholds[s]) continue;
    Selection sel;
    sel.complete = false;
    sel.skill = s;
    sel.segment = static_cast<int>(bounds[s].size()) - 1;
    for (size_t j = 0; j < bounds[s].size(); ++j) {
      if (rho[s] < std::min(thresholds[s], bounds[s][j])) {
        sel.segment = static_cast<int>(j);
        break;
      }
    }
    return sel;
  }
  Selection done;
  done.complete = true;
  return done;
}

MultiSelection select_multi(const SequenceLibrary& lib,
                            const std::vector<double>& rho,
                            const std::vector<double>& thresholds,
                            int prev_sequence, double delta) {
  NearestResult near =
      delta > 0.0 ? nearest_sequence_hysteresis(lib, rho, prev_sequence, delta)
                  : nearest_sequence(lib, rho);
  MultiSelection out;
  out.sequence = near.index;
  out.distance = near.distance;
  out.edge = near.edge;
  out.sel = select_single(lib.trajectories[near.index].ordering, rho,
                          thresholds, lib.bounds);
  return out;
}

std::string library_to_json_text(const SequenceLibrary& lib) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["n_skills"] = lib.n_skills;
  j["alphas"] = lib.alphas;
  j["bounds"] = lib.bounds;
  j["trajectories"] = nlohmann::json::array();
  for (const ProgressTrajectory& t : lib.trajectories) {
    nlohmann::json jt;
    jt["ordering"] = t.ordering;
    jt["vertices"] = t.vertices;
    j["trajectories"].push_back(jt);
  }
  return j.dump(2);
}

SequenceLibrary library_from_json_text(const std::string& text) {
  nlohmann::json j = parse_json_text(text, "library");
  require_keys(j, {"schema_version", "n_skills", "alphas", "bounds",
                   "trajectories"},
               "library");
  if (get_req<int>(j, "schema_version", "library") != 1)
    fail(ErrorCode::Validation, "unsupported library schema version");
  SequenceLibrary lib;
  lib.n_skills = get_req<int>(j, "n_skills", "library");
  if (lib.n_skills < 1)
    fail(ErrorCode::Validation, "library must cover at least one skill");
  lib.alphas = get_req<std::vector<double>>(j, "alphas", "library");
  lib.bounds =
      get_req<std::vector<std::vector<double>>>(j, "bounds", "library");
  check_dim(lib.alphas, lib.n_skills, "library alphas");
  if (static_cast<int>(lib.bounds.size()) != lib.n_skills)
    fail(ErrorCode::DimensionMismatch, "library bounds dimension mismatch");
  for (const auto& b : lib.bounds)
    if (b.empty())
      fail(ErrorCode::Validation, "every skill needs at least one bound");
  if (!j["trajectories"].is_array())
    fail(ErrorCode::Validation, "library trajectories must be an array");
  for (const auto& jt : j["trajectories"]) {
    require_keys(jt, {"ordering", "vertices"}, "library trajectory");
    ProgressTrajectory t;
    t.ordering = get_req<std::vector<int>>(jt, "ordering", "trajectory");
    t.vertices =
        get_req<std::vector<std::vector<double>>>(jt, "vertices", "trajectory");
    if (t.ordering.empty() || t.vertices.empty())
      fail(ErrorCode::Validation, "trajectory must not be empty");
    for (const auto& v : t.vertices) check_dim(v, lib.n_skills, "vertex");
    lib.trajectories.push_back(std::move(t));
  }
  return lib;
}

void save_library(const SequenceLibrary& lib, const std::string& path) {
  save_text_file(path, library_to_json_text(lib) + "\n");
}

SequenceLibrary load_library(const std::string& path) {
  return library_from_json_text(load_text_file(path));
}

}  // namespace progss
