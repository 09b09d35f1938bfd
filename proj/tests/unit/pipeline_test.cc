// Copyright 2026 The Editlens Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "editlens/pipeline.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "editlens/error.h"
#include "editlens/fixture.h"
#include "editlens/text.h"
#include "json.hpp"

namespace editlens {
namespace {

std::string ReadFile(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path TempDir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("editlens_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

PipelineConfig LoadConfig(const fs::path &fixture,
                          const std::map<std::string, std::string> &overrides = {}) {
  KeyValueConfig c = KeyValueConfig::Load(fixture / "pipeline.cfg");
  for (const auto &[k, v] : overrides) c.Set(k, v);
  return PipelineConfig::FromConfig(c, fixture);
}

// Rows of comparisons.csv keyed by (lang, metric, aspect).
std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::string>>
ReadComparisons(const fs::path &path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::string>> out;
  while (std::getline(in, line)) {
    auto f = ParseCsvLine(line);
    out[{f[0], f[1], f[2]}] = f;
  }
  return out;
}

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    fixture_ = new fs::path(TempDir("pipeline"));
    SyntheticSpec spec;
    spec.seed = 42;
    GenerateFixture(spec, *fixture_);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*fixture_);
    delete fixture_;
  }
  static fs::path *fixture_;
};

fs::path *PipelineTest::fixture_ = nullptr;

TEST_F(PipelineTest, FixtureRecoversPlant) {
  const PipelineResult result = RunPipeline(LoadConfig(*fixture_));
  const fs::path report = result.report_dir;
  for (const char *name : {"comparisons.csv", "topics.json", "profiles.csv",
                           "language_histogram.csv", "plot_data.csv"}) {
    EXPECT_TRUE(fs::exists(report / name)) << name;
  }

  const auto rows = ReadComparisons(report / "comparisons.csv");
  for (const char *metric : {"ngram_entropy_1", "ngram_entropy_2", "ngram_entropy_3",
                             "pos_entropy_1", "pos_entropy_2", "pos_entropy_3"}) {
    const auto it = rows.find({"en", metric, "pre_edit"});
    ASSERT_NE(it, rows.end()) << metric;
    const auto &f = it->second;
    EXPECT_GT(std::stod(f[5]), std::stod(f[6])) << metric;
    EXPECT_LT(std::stod(f[11]), 0.01) << metric;
  }

  std::ifstream profiles(report / "profiles.csv");
  std::vector<EditorProfile> unused;
  const auto profile_rows = ReadProfilesCsv(profiles);
  std::map<std::string, int> n_langs;
  for (const ProfileRow &r : profile_rows) n_langs[r.editor_id] = r.n_langs;
  EXPECT_EQ(n_langs.size(), 100u);
  int bilingual = 0;
  for (const auto &[editor, n] : n_langs) bilingual += n == 2;
  EXPECT_NEAR(bilingual / 100.0, 0.773, 0.01);

  const auto truth = nlohmann::json::parse(ReadFile(*fixture_ / "ground_truth.json"));
  for (const auto &e : truth["editors"]) {
    const std::string group = e["group"];
    if (group == "monolingual" || group == "outlier") {
      EXPECT_FALSE(n_langs.count(e["id"])) << e["id"];
      continue;
    }
    const std::string primary = e["primary_lang"];
    for (const ProfileRow &r : profile_rows) {
      if (r.editor_id == e["id"]) {
        EXPECT_EQ(r.primary_lang, primary);
      }
    }
  }

  // Planted topics: documents sharing a planted topic share a cluster.
  std::ifstream topics(report / "topics.json");
  const auto labels = ReadTopicLabels(topics);
  std::map<int, std::map<int, int>> confusion;
  for (const auto &[article, topic] : truth["article_topics"]["en"].items()) {
    const auto it = labels.find({"en", article});
    if (it != labels.end()) ++confusion[topic.get<int>()][it->second];
  }
  int agree = 0, total = 0;
  for (const auto &[topic, row] : confusion) {
    int best = 0;
    for (const auto &[label, count] : row) {
      best = std::max(best, count);
      total += count;
    }
    agree += best;
  }
  ASSERT_GT(total, 0);
  EXPECT_GE(static_cast<double>(agree) / total, 0.8);

  // Planted interest is uniform over topics.
  std::ifstream interest(report / "interest.csv");
  std::string line;
  std::getline(interest, line);
  int en_rows = 0;
  while (std::getline(interest, line)) {
    const auto f = ParseCsvLine(line);
    if (f[0] != "en") continue;
    ++en_rows;
    EXPECT_NEAR(std::stod(f[4]), 0.2, 0.1) << line;
    EXPECT_NEAR(std::stod(f[5]), 0.2, 0.1) << line;
  }
  EXPECT_GT(en_rows, 0);
}

TEST_F(PipelineTest, RerunIsCachedAndByteIdentical) {
  const fs::path out = TempDir("cache");
  const PipelineConfig cfg = LoadConfig(*fixture_, {{"out", out.string()}});
  const PipelineResult first = RunPipeline(cfg);
  for (const StageRun &s : first.stages) EXPECT_FALSE(s.skipped) << s.name;
  const std::string comparisons = ReadFile(out / "comparisons.csv");
  const std::string topics = ReadFile(out / "topics.json");

  const PipelineResult second = RunPipeline(cfg);
  for (const StageRun &s : second.stages) EXPECT_TRUE(s.skipped) << s.name;
  EXPECT_EQ(ReadFile(out / "comparisons.csv"), comparisons);

  // A new sampling seed invalidates the seeded stages only.
  const PipelineResult third =
      RunPipeline(LoadConfig(*fixture_, {{"out", out.string()}, {"seed", "43"}}));
  std::map<std::string, bool> skipped;
  for (const StageRun &s : third.stages) skipped[s.name] = s.skipped;
  EXPECT_TRUE(skipped.at("ingest"));
  EXPECT_TRUE(skipped.at("diff"));
  EXPECT_FALSE(skipped.at("metrics"));
  EXPECT_FALSE(skipped.at("topics"));

  // Deleting an output forces that stage to run again.
  RunPipeline(cfg);
  fs::remove(out / "topics.json");
  const PipelineResult fourth = RunPipeline(cfg);
  for (const StageRun &s : fourth.stages) {
    if (s.name == "topics") {
      EXPECT_FALSE(s.skipped);
    }
  }
  EXPECT_EQ(ReadFile(out / "topics.json"), topics);
  fs::remove_all(out);
}

TEST_F(PipelineTest, IndependentRunsAreByteIdentical) {
  const fs::path a = TempDir("det_a");
  const fs::path b = TempDir("det_b");
  RunPipeline(LoadConfig(*fixture_, {{"out", a.string()}}));
  RunPipeline(LoadConfig(*fixture_, {{"out", b.string()}}));
  for (const char *name : {"comparisons.csv", "profiles.csv", "topics.json",
                           "metrics.csv", "interest.csv"}) {
    EXPECT_EQ(ReadFile(a / name), ReadFile(b / name)) << name;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_F(PipelineTest, MissingRevisionsNamesDiffStage) {
  const fs::path out = TempDir("missing");
  const PipelineConfig cfg = LoadConfig(
      *fixture_, {{"out", out.string()}, {"revisions", (out / "nowhere").string()}});
  try {
    RunPipeline(cfg);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kStage);
    const std::string what = e.what();
    EXPECT_NE(what.find("'diff'"), std::string::npos) << what;
    EXPECT_NE(what.find("nowhere"), std::string::npos) << what;
  }
  fs::remove_all(out);
}

TEST(PipelineConfigTest, Validation) {
  const auto parse = [](const std::string &text) {
    return PipelineConfig::FromConfig(KeyValueConfig::Parse(text), "/base");
  };
  const std::string minimal = "records = r.jsonl\nrevisions = rev\nout = /abs/out\n";
  const PipelineConfig cfg = parse(minimal + "seed = 3\n");
  EXPECT_EQ(cfg.records, fs::path("/base/r.jsonl"));
  EXPECT_EQ(cfg.out, fs::path("/abs/out"));
  EXPECT_EQ(cfg.gap_seconds, 3600);
  EXPECT_EQ(cfg.max_langs, 10);
  EXPECT_EQ(cfg.sample_k, 3);
  EXPECT_EQ(cfg.reps, 100);
  EXPECT_FALSE(cfg.tags.has_value());

  for (const std::string &bad :
       {minimal, minimal + "seed = 1\nunknown = 2\n", minimal + "seed = 1\nk = 1\n",
        minimal + "seed = 1\ngap-seconds = 0\n", minimal + "seed = 1\nrank-by = x\n",
        minimal + "seed = -4\n", minimal + "seed = 1\neps = -1\n"}) {
    try {
      parse(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfig) << bad;
    }
  }
  const PipelineConfig tuned = parse(
      minimal + "seed = 1\nalpha = 0.3\neps = auto\nlanguages = en, de\npooled = true\n");
  EXPECT_DOUBLE_EQ(tuned.topics.lda.alpha, 0.3);
  EXPECT_EQ(tuned.topics.eps, 0.0);
  EXPECT_EQ(tuned.languages, (std::vector<std::string>{"en", "de"}));
  EXPECT_TRUE(tuned.pooled);
}

TEST(SyntheticSpecTest, Validation) {
  EXPECT_NO_THROW(SyntheticSpec::FromConfig(KeyValueConfig::Parse("seed = 1\n")));
  EXPECT_THROW(SyntheticSpec::FromConfig(KeyValueConfig::Parse("n-primary = 5\n")), Error);
  EXPECT_THROW(
      SyntheticSpec::FromConfig(KeyValueConfig::Parse("seed = 1\nn-primary = 0\n")), Error);
  EXPECT_THROW(
      SyntheticSpec::FromConfig(KeyValueConfig::Parse("seed = 1\nentropy-shift = inf\n")),
      Error);
}

TEST(FixtureTest, DeterministicForSeed) {
  const fs::path a = TempDir("fx_a");
  const fs::path b = TempDir("fx_b");
  SyntheticSpec spec;
  spec.seed = 9;
  spec.n_primary = spec.n_nonprimary = 5;
  spec.other_langs = {"de", "es"};
  spec.n_outliers = 0;
  GenerateFixture(spec, a);
  GenerateFixture(spec, b);
  for (const char *name : {"records.jsonl", "tags.tsv", "ground_truth.json",
                           "revisions/manifest.tsv"}) {
    EXPECT_EQ(ReadFile(a / name), ReadFile(b / name)) << name;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

int RunCli(const std::string &args, std::string *output) {
  const std::string cmd = std::string(EDITLENS_CLI_PATH) + " " + args + " 2>&1";
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return -1;
  char buf[512];
  output->clear();
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) *output += buf;
  const int status = ::pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(PipelineTest, CliExitCodes) {
  const fs::path out = TempDir("cli");
  const std::string cfg = (*fixture_ / "pipeline.cfg").string();
  std::string output;
  EXPECT_EQ(RunCli("run --config " + cfg + " --out " + out.string(), &output), 0)
      << output;
  EXPECT_TRUE(fs::exists(out / "comparisons.csv"));
  EXPECT_EQ(RunCli("run --config " + cfg + " --out " + out.string() + " --k 1", &output),
            2)
      << output;
  EXPECT_EQ(RunCli("run --config " + (out / "absent.cfg").string(), &output), 2);
  EXPECT_EQ(RunCli("run", &output), 2);
  EXPECT_EQ(RunCli("run --config " + cfg + " --out " + out.string() + " --revisions " +
                       (out / "nowhere").string(),
                   &output),
            3);
  EXPECT_NE(output.find("diff"), std::string::npos) << output;
  fs::remove_all(out);
}

}  // namespace
}  // namespace editlens
