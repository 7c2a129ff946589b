#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_bin() {
  const char* bin = std::getenv("PROGSS_CLI_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PROGSS_CLI_BIN must point at the binary");
  return bin;
}

CmdResult run_cli(const std::string& args) {
  CmdResult r;
  std::string cmd = cli_bin() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) r.out += buf;
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

const char* kScenario = "/tmp/progss_cli_scenario.json";

}  // namespace

TEST_CASE("help requests exit zero and list the subcommands") {
  write_file(kScenario, R"({"schema_version": 1, "spawn": {"kind": "edge"}})");

  CmdResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("generate") != std::string::npos);
  CHECK(r.out.find("evaluate") != std::string::npos);

  r = run_cli("run --help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("--estimator") != std::string::npos);
}

TEST_CASE("argument mistakes exit with the usage code") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("warp").exit_code == 1);
  CHECK(run_cli(std::string("generate --scenario ") + kScenario).exit_code ==
        1);  // --out missing
  CHECK(run_cli("annotate --out /tmp/x.jsonl").exit_code == 1);  // --in missing
  CHECK(run_cli(std::string("run --scenario ") + kScenario +
                " --ordering pick --estimator banana")
            .exit_code == 1);
  CHECK(run_cli("run --ordering pick").exit_code == 1);  // --scenario missing
}

TEST_CASE("bad content and missing files use distinct exit codes") {
  const char* bad = "/tmp/progss_cli_bad_scenario.json";
  write_file(bad, "{ not json");
  CmdResult r = run_cli(std::string("run --scenario ") + bad +
                        " --ordering pick");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("error:") != std::string::npos);

  write_file(bad, R"({"schema_version": 1, "horizon": 0})");
  CHECK(run_cli(std::string("run --scenario ") + bad + " --ordering pick")
            .exit_code == 2);

  CHECK(run_cli("run --scenario /tmp/progss_cli_missing.json --ordering pick")
            .exit_code == 3);
  CHECK(run_cli("annotate --in /tmp/progss_cli_missing.jsonl --out /tmp/x")
            .exit_code == 3);

  // estimator file requirements surface from the validation layer
  CHECK(run_cli(std::string("run --scenario ") + kScenario +
                " --ordering pick --estimator knn")
            .exit_code == 2);
  CHECK(run_cli(std::string("evaluate --scenario ") + kScenario +
                " --ordering pick --trials 0")
            .exit_code == 2);
  std::remove(bad);
}

TEST_CASE("the pipeline chains through the command line") {
  const std::string demos = "/tmp/progss_cli_demos.jsonl";
  const std::string annotated = "/tmp/progss_cli_annotated.jsonl";
  const std::string knn = "/tmp/progss_cli_knn.bin";
  const std::string library = "/tmp/progss_cli_library.json";
  const std::string trace = "/tmp/progss_cli_trace.csv";
  const std::string exported = "/tmp/progss_cli_export.csv";

  CmdResult r = run_cli(std::string("generate --scenario ") + kScenario +
                        " --orderings flip,pick,pack,push --trials 2 --seed 7"
                        " --out " + demos);
  CHECK(r.exit_code == 0);
  REQUIRE(file_exists(demos));

  r = run_cli("annotate --in " + demos + " --k-dilation 1 --out " + annotated);
  CHECK(r.exit_code == 0);
  REQUIRE(file_exists(annotated));

  r = run_cli("fit --in " + annotated + " --k 3 --out " + knn);
  CHECK(r.exit_code == 0);
  CHECK(file_exists(knn));

  r = run_cli("library --in " + annotated + " --out " + library);
  CHECK(r.exit_code == 0);
  CHECK(file_exists(library));

  r = run_cli(std::string("run --scenario ") + kScenario +
              " --ordering flip,pick,pack,push --seed 3 --trace " + trace);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("success 1") != std::string::npos);
  CHECK(file_exists(trace));

  r = run_cli(std::string("run --scenario ") + kScenario + " --estimator knn"
              " --estimator-file " + knn + " --library " + library +
              " --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("success ") != std::string::npos);

  r = run_cli("export --in " + annotated + " --out " + exported);
  CHECK(r.exit_code == 0);
  CHECK(file_exists(exported));

  for (const std::string& f :
       {demos, annotated, knn, library, trace, exported})
    std::remove(f.c_str());
}

TEST_CASE("manifests supply defaults and explicit flags win") {
  const std::string manifest = "/tmp/progss_cli_manifest.json";
  const std::string metrics = "/tmp/progss_cli_metrics.csv";
  write_file(manifest, std::string("{\"scenario\": \"") + kScenario +
                           "\", \"ordering\": \"flip,pick,pack,push\","
                           " \"estimator\": \"oracle\", \"seed\": 4,"
                           " \"trials\": 2, \"label\": \"from_manifest\","
                           " \"metrics\": \"" + metrics + "\"}");

  CmdResult r = run_cli("evaluate --manifest " + manifest);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("success_rate") != std::string::npos);
  REQUIRE(file_exists(metrics));
  {
    std::ifstream in(metrics);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("from_manifest,2,", 0) == 0);
  }

  // an explicit flag overrides the manifest value
  r = run_cli("evaluate --manifest " + manifest + " --label from_flag");
  CHECK(r.exit_code == 0);
  {
    std::ifstream in(metrics);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row.rfind("from_flag,2,", 0) == 0);
  }

  // unknown manifest keys and broken manifests are rejected
  write_file(manifest, R"({"scenario": "x", "surprise": 1})");
  CHECK(run_cli("evaluate --manifest " + manifest).exit_code == 2);
  write_file(manifest, "[1, 2]");
  CHECK(run_cli("run --manifest " + manifest).exit_code == 2);
  CHECK(run_cli("run --manifest /tmp/progss_cli_no_manifest.json").exit_code ==
        3);

  std::remove(manifest.c_str());
  std::remove(metrics.c_str());
  std::remove(kScenario);
}
