#include "estimator/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>

#include "core/error.hpp"
#include "data/json_util.hpp"

namespace progss {

std::vector<double> featurize(const Observation& obs, const GoalSpec& goal,
                              const SimParams& p) {
  std::vector<double> f;
  f.reserve(kFeatureDim);
  const Rect& ws = p.workspace;
  f.push_back((obs.object.x - ws.x0) / ws.width());
  f.push_back((obs.object.y - ws.y0) / ws.height());
  f.push_back((wrap_angle(obs.object.yaw) + kPi) / (2.0 * kPi));
  f.push_back(obs.object.z / p.lift_height);
  f.push_back(obs.upright ? 1.0 : 0.0);
  f.push_back(obs.attached ? 1.0 : 0.0);
  f.push_back(obs.suction_on ? 1.0 : 0.0);
  f.push_back(obs.tote == ToteId::Picking ? 1.0 : 0.0);
  f.push_back(obs.tote == ToteId::Packing ? 1.0 : 0.0);
  f.push_back(obs.tote == ToteId::Neither ? 1.0 : 0.0);
  Pose4 target = goal.target_pose(p);
  f.push_back(planar_dist(obs.object, target) / 1.0);
  f.push_back(std::abs(wrap_angle(obs.object.yaw - target.yaw)) / kPi);
  double h = obs.upright ? p.upright_height() : obs.object_h;
  double tip_d = point_box_distance(obs.robot.x, obs.robot.y,
                                    obs.robot.z - obs.object.z, obs.object.xy(),
                                    obs.object.yaw, 0.5 * obs.object_w,
                                    0.5 * obs.object_d, h);
  f.push_back(std::min(tip_d, 0.5) / 0.5);
  f.push_back(goal.corner == GoalCorner::BottomLeft ? 1.0 : 0.0);
  f.push_back(goal.corner == GoalCorner::BottomRight ? 1.0 : 0.0);
  f.push_back(goal.corner == GoalCorner::TopLeft ? 1.0 : 0.0);
  f.push_back(goal.corner == GoalCorner::TopRight ? 1.0 : 0.0);
  return f;
}

KnnEstimator fit_knn(std::vector<std::vector<double>> features,
                     std::vector<std::vector<double>> labels, int n_skills,
                     int k) {
  if (features.empty())
    fail(ErrorCode::Validation, "cannot fit on an empty training set");
  if (features.size() != labels.size())
    fail(ErrorCode::Validation, "feature and label counts differ");
  if (k < 1) fail(ErrorCode::Validation, "k must be at least 1");
  if (n_skills < 1) fail(ErrorCode::Validation, "need at least one skill");
  size_t dims = features[0].size();
  if (dims == 0) fail(ErrorCode::Validation, "features must not be empty");
  for (const auto& row : features)
    if (row.size() != dims)
      fail(ErrorCode::DimensionMismatch, "feature rows have mixed dimensions");
  for (const auto& row : labels)
    if (static_cast<int>(row.size()) != n_skills)
      fail(ErrorCode::DimensionMismatch, "label rows have mixed dimensions");

  KnnEstimator est;
  est.n_skills = n_skills;
  est.k = k;
  est.feat_min.assign(dims, 0.0);
  est.feat_max.assign(dims, 0.0);
  for (size_t d = 0; d < dims; ++d) {
    double lo = features[0][d], hi = features[0][d];
    for (const auto& row : features) {
      lo = std::min(lo, row[d]);
      hi = std::max(hi, row[d]);
    }
    est.feat_min[d] = lo;
    est.feat_max[d] = hi;
  }
  est.features = std::move(features);
  est.labels = std::move(labels);
  return est;
}

std::vector<double> knn_predict(const KnnEstimator& est,
                                const std::vector<double>& query) {
  size_t dims = est.feat_min.size();
  if (query.size() != dims)
    fail(ErrorCode::DimensionMismatch, "query dimension does not match fit");
  std::vector<double> scale(dims, 0.0), q(dims, 0.0);
  for (size_t d = 0; d < dims; ++d) {
    double span = est.feat_max[d] - est.feat_min[d];
    scale[d] = span > 0.0 ? 1.0 / span : 0.0;
    q[d] = (query[d] - est.feat_min[d]) * scale[d];
  }
  size_t n = est.features.size();
  std::vector<std::pair<double, size_t>> order(n);
  for (size_t i = 0; i < n; ++i) {
    double d2 = 0.0;
    const auto& row = est.features[i];
    for (size_t d = 0; d < dims; ++d) {
      double e = (row[d] - est.feat_min[d]) * scale[d] - q[d];
      d2 += e * e;
    }
    order[i] = {d2, i};
  }
  size_t k = std::min<size_t>(est.k, n);
  // lexicographic order makes distance ties fall to the earlier row
  std::partial_sort(order.begin(), order.begin() + k, order.end());
  std::vector<double> out(est.n_skills, 0.0);
  for (size_t i = 0; i < k; ++i)
    for (int s = 0; s < est.n_skills; ++s)
      out[s] += est.labels[order[i].second][s];
  for (int s = 0; s < est.n_skills; ++s)
    out[s] = clamp01(out[s] / static_cast<double>(k));
  return out;
}

TrainSet make_training_set(const std::vector<Demonstration>& demos,
                           const std::vector<AnnotatedDemo>& annos,
                           const GoalSpec& goal, const SimParams& p) {
  if (demos.size() != annos.size())
    fail(ErrorCode::Validation, "annotations must parallel the demonstrations");
  TrainSet ts;
  for (size_t d = 0; d < demos.size(); ++d) {
    if (annos[d].progress.size() != demos[d].steps.size())
      fail(ErrorCode::Validation, "annotation rows do not match the steps");
    for (size_t i = 0; i < demos[d].steps.size(); ++i) {
      ts.features.push_back(featurize(demos[d].steps[i].obs, goal, p));
      ts.labels.push_back(annos[d].progress[i]);
    }
  }
  return ts;
}

namespace {

constexpr char kKnnMagic[8] = {'P', 'G', 'S', 'S', 'K', 'N', 'N', '1'};

void append_bytes(std::string& buf, const void* p, size_t n) {
  buf.append(static_cast<const char*>(p), n);
}
void append_i64(std::string& buf, int64_t v) { append_bytes(buf, &v, 8); }
void append_f64(std::string& buf, double v) { append_bytes(buf, &v, 8); }

const char* take_bytes(const char* p, const char* end, void* out, size_t n) {
  if (p + n > end) fail(ErrorCode::Io, "estimator snapshot is truncated");
  std::memcpy(out, p, n);
  return p + n;
}

}  // namespace

void save_knn(const KnnEstimator& est, const std::string& path) {
  std::string buf;
  append_bytes(buf, kKnnMagic, 8);
  append_i64(buf, est.n_skills);
  append_i64(buf, est.k);
  append_i64(buf, static_cast<int64_t>(est.features.size()));
  append_i64(buf, static_cast<int64_t>(est.feat_min.size()));
  for (double v : est.feat_min) append_f64(buf, v);
  for (double v : est.feat_max) append_f64(buf, v);
  for (const auto& row : est.features)
    for (double v : row) append_f64(buf, v);
  for (const auto& row : est.labels)
    for (double v : row) append_f64(buf, v);
  save_text_file(path, buf);
}

KnnEstimator load_knn(const std::string& path) {
  std::string buf = load_text_file(path);
  const char* p = buf.data();
  const char* end = p + buf.size();
  char magic[8];
  p = take_bytes(p, end, magic, 8);
  if (std::memcmp(magic, kKnnMagic, 8) != 0)
    fail(ErrorCode::Validation, path + " is not an estimator snapshot");
  int64_t n_skills = 0, k = 0, rows = 0, dims = 0;
  p = take_bytes(p, end, &n_skills, 8);
  p = take_bytes(p, end, &k, 8);
  p = take_bytes(p, end, &rows, 8);
  p = take_bytes(p, end, &dims, 8);
  if (n_skills < 1 || k < 1 || rows < 1 || dims < 1)
    fail(ErrorCode::Validation, "estimator snapshot header is invalid");
  KnnEstimator est;
  est.n_skills = static_cast<int>(n_skills);
  est.k = static_cast<int>(k);
  est.feat_min.resize(dims);
  est.feat_max.resize(dims);
  p = take_bytes(p, end, est.feat_min.data(), dims * 8);
  p = take_bytes(p, end, est.feat_max.data(), dims * 8);
  est.features.assign(rows, std::vector<double>(dims));
  for (auto& row : est.features) p = take_bytes(p, end, row.data(), dims * 8);
  est.labels.assign(rows, std::vector<double>(n_skills));
  for (auto& row : est.labels)
    p = take_bytes(p, end, row.data(), n_skills * 8);
  if (p != end) fail(ErrorCode::Validation, "estimator snapshot has trailing bytes");
  return est;
}

std::vector<double> oracle_progress(const WorldState& w, const PolicyBank& bank,
                                    const GoalSpec& goal, const SimParams& p,
                                    const std::vector<double>& alphas) {
  if (alphas.size() != bank.size())
    fail(ErrorCode::DimensionMismatch, "alphas must parallel the skill bank");
  std::vector<double> rho(bank.size(), 1.0);
  for (size_t s = 0; s < bank.size(); ++s) {
    double a = alphas[s];
    double phi = 0.0;
    double cap = 1.0;
    bool done = false;
    switch (bank.skills[s].role) {
      case TaskRole::Flip:
        done = flip_done(w, p);
        phi = 0.5 * clamp01(w.object.press_depth / p.flip_depth) +
              0.5 * clamp01(w.object.sweep_dist / p.flip_sweep);
        break;
      case TaskRole::Pick:
        done = pick_done(w, p);
        phi = w.attached ? clamp01(w.object.pose.z / p.lift_height) : 0.0;
        break;
      case TaskRole::Pack: {
        done = pack_done(w, p, goal);
        double d = goal.quadrant(p).distance(w.object.pose.xy());
        phi = w.attached ? clamp01(1.0 - d / 0.15) : 0.0;
        break;
      }
      case TaskRole::Push: {
        bool ori = push_orientation_done(w, p, goal);
        done = ori && push_position_done(w, p, goal);
        Pose4 t = goal.target_pose(p);
        double pd = planar_dist(w.object.pose, t);
        double ye = std::abs(wrap_angle(w.object.pose.yaw - t.yaw));
        // Two-phase shaping mirroring the segment order: the orientation half
        // saturates once its predicate holds, and only then does position
        // credit accrue. The cap keeps a push below the completion threshold
        // until both predicates hold, so complete implies the postcondition.
        phi = 0.5 * (ori ? 1.0 : clamp01(1.0 - ye / 0.6)) +
              (ori ? 0.5 * clamp01(1.0 - pd / 0.15) : 0.0);
        cap = 0.88;
        break;
      }
      case TaskRole::None:
        rho[s] = 1.0;
        continue;
    }
    rho[s] = done ? 1.0 : std::min(clamp01(a + (1.0 - a) * phi), cap);
  }
  return rho;
}

ProgressFn make_oracle_progress_fn(const PolicyBank& bank, const GoalSpec& goal,
                                   const SimParams& p,
                                   std::vector<double> alphas) {
  auto shared = std::make_shared<PolicyBank>(bank);
  return [shared, goal, p, alphas = std::move(alphas)](const WorldState& w) {
    return oracle_progress(w, *shared, goal, p, alphas);
  };
}

ProgressFn make_knn_progress_fn(const KnnEstimator& est, const GoalSpec& goal,
                                const SimParams& p) {
  auto shared = std::make_shared<KnnEstimator>(est);
  return [shared, goal, p](const WorldState& w) {
    return knn_predict(*shared, featurize(observe(w, p), goal, p));
  };
}

}  // namespace progss
