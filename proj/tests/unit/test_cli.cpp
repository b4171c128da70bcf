#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "lintext/synthetic.hpp"

using namespace lintext;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LINTEXT_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "lintext_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SyntheticConfig cfg;
  cfg.num_documents = 60;
  cfg.vocabulary_size = 200;
  cfg.noise_min_rate = 0.02;
  std::ofstream out(dir / "corpus.jsonl");
  for (const auto& d : make_synthetic_corpus(cfg)) out << document_to_json_line(d) << '\n';
  return dir;
}

}  // namespace

TEST_CASE("exit codes") {
  const fs::path dir = workdir();
  CHECK(run_cli("") == 1);
  CHECK(run_cli("frobnicate") == 1);
  CHECK(run_cli("run --corpus " + (dir / "corpus.jsonl").string() + " --classifiers knn") == 1);
  CHECK(run_cli("run --corpus " + (dir / "corpus.jsonl").string() + " --no-such-flag") == 1);
  CHECK(run_cli("ingest --corpus " + (dir / "missing.jsonl").string() + " --out " + (dir / "t.jsonl").string()) == 1);
  std::ofstream(dir / "broken.jsonl") << "{\"id\": \"a\"\n";
  CHECK(run_cli("ingest --corpus " + (dir / "broken.jsonl").string() + " --out " + (dir / "t.jsonl").string()) == 2);
  CHECK(run_cli("ingest --corpus " + (dir / "corpus.jsonl").string() + " --out " + (dir / "t.jsonl").string()) == 0);
}

TEST_CASE("run is deterministic and writes its artifacts") {
  const fs::path dir = workdir();
  const std::string base = "run --corpus " + (dir / "corpus.jsonl").string() +
                           " --classifiers svm,nb --transforms none --seed 3 --output ";
  REQUIRE(run_cli(base + (dir / "a").string()) == 0);
  REQUIRE(run_cli(base + (dir / "b").string() + " --threads 2") == 0);
  for (const char* f : {"config.txt", "foldplan.json", "results.csv", "results.json", "summary_mcc.txt"})
    CHECK(fs::exists(dir / "a" / f));
  CHECK(slurp(dir / "a" / "results.csv") == slurp(dir / "b" / "results.csv"));
  CHECK(run_cli("report --results " + (dir / "a" / "results.json").string() + " --metric f1") == 0);
}

TEST_CASE("train then predict") {
  const fs::path dir = workdir();
  const std::string corpus = (dir / "corpus.jsonl").string();
  REQUIRE(run_cli("train --corpus " + corpus + " --clf logreg --transform idf+norm --c 1 --model-out " +
                  (dir / "m.json").string()) == 0);
  REQUIRE(run_cli("predict --model " + (dir / "m.json").string() + " --corpus " + corpus + " --out " +
                  (dir / "p.csv").string()) == 0);
  const std::string preds = slurp(dir / "p.csv");
  CHECK(preds.rfind("id,score,label\n", 0) == 0);
  CHECK(std::count(preds.begin(), preds.end(), '\n') == 61);
  REQUIRE(run_cli("featurize --corpus " + corpus + " --out-dir " + (dir / "feat").string() + " --top-features 5") == 0);
  CHECK(fs::exists(dir / "feat" / "top_features.tsv"));
}
