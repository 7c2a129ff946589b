#include "pipeline/pipeline.hpp"

#include <cstdio>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "data/json_util.hpp"

namespace progss {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::vector<int> parse_ordering(const PolicyBank& bank,
                                const std::string& names) {
  std::vector<int> out;
  for (const std::string& name : split(names, ',')) {
    if (name.empty())
      fail(ErrorCode::Validation, "empty skill name in ordering \"" + names + "\"");
    const SkillSpec* s = bank.find(name);
    if (!s) fail(ErrorCode::Validation, "unknown skill \"" + name + "\"");
    out.push_back(s->id);
  }
  return out;
}

std::vector<std::vector<int>> parse_orderings(const PolicyBank& bank,
                                              const std::string& spec) {
  std::vector<std::vector<int>> out;
  for (const std::string& part : split(spec, ';'))
    out.push_back(parse_ordering(bank, part));
  return out;
}

std::vector<Demonstration> generate_batch(
    const PolicyBank& bank, const std::vector<std::vector<int>>& orderings,
    int per_ordering, const ScenarioConfig& sc, uint64_t seed0) {
  if (orderings.empty())
    fail(ErrorCode::Validation, "need at least one ordering");
  if (per_ordering < 1)
    fail(ErrorCode::Validation, "need at least one demonstration per ordering");
  std::vector<Demonstration> out;
  for (size_t oi = 0; oi < orderings.size(); ++oi) {
    uint64_t stream = mix_seed(seed0, 0xB000 + oi);
    int count = 0;
    int attempts = 0;
    int cap = per_ordering * 64;
    while (count < per_ordering) {
      if (attempts >= cap)
        fail(ErrorCode::InfeasibleOrdering,
             "could not generate " + std::to_string(per_ordering) +
                 " feasible demonstrations for ordering " +
                 std::to_string(oi));
      uint64_t seed = mix_seed(stream, static_cast<uint64_t>(attempts++));
      try {
        out.push_back(generate_demo(bank, orderings[oi], sc, seed));
        ++count;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InfeasibleOrdering &&
            e.code() != ErrorCode::NoContactFound)
          throw;
      }
    }
  }
  return out;
}

void op_generate(const ScenarioConfig& sc, const std::string& orderings_spec,
                 int per_ordering, uint64_t seed, const std::string& out_path) {
  PolicyBank bank = default_bank();
  auto orderings = parse_orderings(bank, orderings_spec);
  auto demos = generate_batch(bank, orderings, per_ordering, sc, seed);
  save_demos(out_path, sc, bank.skills, demos);
}

void op_annotate(const std::string& demos_path, int k_dilation,
                 const std::string& out_path) {
  LoadedDemos in = load_demos(demos_path);
  std::vector<int> segments;
  for (const SkillSpec& s : in.skills) segments.push_back(s.segments);
  AnnotatedDataset ds = annotate_dataset(in.demos, segments, k_dilation);
  save_annotated(out_path, in.scenario, in.skills, in.demos, ds.annos,
                 ds.stats, k_dilation);
}

void op_fit(const std::string& annotated_path, int k,
            const std::string& out_path) {
  LoadedAnnotated in = load_annotated(annotated_path);
  TrainSet ts =
      make_training_set(in.demos, in.annos, in.scenario.goal, in.scenario.sim);
  KnnEstimator est = fit_knn(std::move(ts.features), std::move(ts.labels),
                             static_cast<int>(in.skills.size()), k);
  save_knn(est, out_path);
}

void op_build_library(const std::string& annotated_path,
                      const std::string& out_path) {
  LoadedAnnotated in = load_annotated(annotated_path);
  save_library(build_library(in.demos, in.stats), out_path);
}

namespace {

struct PreparedRun {
  PolicyBank bank;
  SequenceLibrary library;
  bool has_library = false;
  RunConfig cfg;
};

void prepare(const RunRequest& req, PreparedRun& pr) {
  pr.bank = default_bank();
  pr.cfg.bank = &pr.bank;
  pr.cfg.scenario = req.scenario;
  if (!req.library_path.empty()) {
    pr.library = load_library(req.library_path);
    pr.has_library = true;
    pr.cfg.library = &pr.library;
  } else if (req.ordering.empty()) {
    fail(ErrorCode::Validation, "need an ordering or a sequence library");
  } else {
    pr.cfg.ordering = parse_ordering(pr.bank, req.ordering);
  }
  if (req.estimator == "oracle") {
    // anchored at the library's canonical alphas when one is loaded, so the
    // shaped estimate moves along the stored trajectories; 0.5 otherwise
    std::vector<double> alphas(pr.bank.size(), 0.5);
    if (pr.has_library && pr.library.alphas.size() == pr.bank.size())
      alphas = pr.library.alphas;
    pr.cfg.progress = make_oracle_progress_fn(
        pr.bank, req.scenario.goal, req.scenario.sim, alphas);
  } else if (req.estimator == "knn") {
    if (req.estimator_path.empty())
      fail(ErrorCode::Validation, "the knn estimator needs a snapshot path");
    KnnEstimator est = load_knn(req.estimator_path);
    if (est.n_skills != static_cast<int>(pr.bank.size()))
      fail(ErrorCode::Validation,
           "estimator snapshot does not match the skill bank");
    pr.cfg.progress =
        make_knn_progress_fn(est, req.scenario.goal, req.scenario.sim);
  } else {
    fail(ErrorCode::Validation,
         "unknown estimator \"" + req.estimator + "\" (oracle or knn)");
  }
}

}  // namespace

EpisodeResult op_run(const RunRequest& req, const std::string& trace_csv,
                     const std::string& decisions_csv) {
  PreparedRun pr;
  prepare(req, pr);
  EpisodeResult ep = run_episode(pr.cfg, req.seed);
  if (!trace_csv.empty()) save_text_file(trace_csv, trace_to_csv(ep.trace));
  if (!decisions_csv.empty())
    save_text_file(decisions_csv,
                   decisions_to_csv(ep.cycles, static_cast<int>(pr.bank.size())));
  return ep;
}

EvalSummary op_evaluate(const RunRequest& req, int trials,
                        const std::string& label,
                        const std::string& metrics_csv,
                        const std::string& trials_csv) {
  PreparedRun pr;
  prepare(req, pr);
  EvalSummary sum = evaluate(pr.cfg, trials, req.seed);
  if (!metrics_csv.empty())
    save_text_file(metrics_csv, metrics_to_csv({{label, sum}}));
  if (!trials_csv.empty()) save_text_file(trials_csv, trials_to_csv(sum));
  return sum;
}

void op_export(const std::string& dataset_path, const std::string& out_csv) {
  bool annotated = true;
  LoadedAnnotated in;
  try {
    in = load_annotated(dataset_path);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Validation) throw;
    annotated = false;
    LoadedDemos plain = load_demos(dataset_path);
    in.scenario = std::move(plain.scenario);
    in.skills = std::move(plain.skills);
    in.demos = std::move(plain.demos);
  }
  std::ostringstream out;
  out << "demo,tick,skill,segment,suction_cmd,robot_x,robot_y,robot_z,"
         "robot_yaw,object_x,object_y,object_z,object_yaw,upright,attached,"
         "contact";
  if (annotated) {
    for (size_t s = 0; s < in.skills.size(); ++s) out << ",progress_" << s;
    out << ",suction_dilated";
  }
  out << "\n";
  for (size_t d = 0; d < in.demos.size(); ++d) {
    const Demonstration& demo = in.demos[d];
    for (size_t i = 0; i < demo.steps.size(); ++i) {
      const DemoStep& st = demo.steps[i];
      out << d << ',' << st.tick << ',' << st.skill << ',' << st.segment << ','
          << st.act.suction << ',' << fmt6(st.obs.robot.x) << ','
          << fmt6(st.obs.robot.y) << ',' << fmt6(st.obs.robot.z) << ','
          << fmt6(st.obs.robot.yaw) << ',' << fmt6(st.obs.object.x) << ','
          << fmt6(st.obs.object.y) << ',' << fmt6(st.obs.object.z) << ','
          << fmt6(st.obs.object.yaw) << ',' << (st.obs.upright ? 1 : 0) << ','
          << (st.obs.attached ? 1 : 0) << ',' << (st.obs.contact ? 1 : 0);
      if (annotated) {
        const AnnotatedDemo& a = in.annos[d];
        for (double v : a.progress[i]) out << ',' << fmt6(v);
        out << ',' << a.suction_dilated[i];
      }
      out << "\n";
    }
  }
  save_text_file(out_csv, out.str());
}

}  // namespace progss
