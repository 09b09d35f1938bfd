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

// editlens: command-line driver for the edit analytics pipeline.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "editlens/error.h"
#include "editlens/fixture.h"
#include "editlens/kvconfig.h"
#include "editlens/pipeline.h"
#include "editlens/text.h"

namespace {

namespace fs = std::filesystem;
using editlens::Error;
using editlens::ErrorCode;

constexpr int kExitConfig = 2;
constexpr int kExitStage = 3;

int ExitCodeFor(const Error &e) {
  switch (e.code()) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
      return kExitConfig;
    default:
      return kExitStage;
  }
}

editlens::RankingBasis ParseRankBy(const std::string &s) {
  if (s == "sessions") return editlens::RankingBasis::kSessions;
  if (s == "edits") return editlens::RankingBasis::kEdits;
  throw Error(ErrorCode::kConfig, "--rank-by must be sessions or edits");
}

std::vector<std::string> ParseLanguages(const std::string &s) {
  std::vector<std::string> out;
  for (const std::string &l : editlens::SplitString(s, ',')) {
    if (!editlens::Trim(l).empty()) out.emplace_back(editlens::Trim(l));
  }
  return out;
}

std::optional<fs::path> OptionalPath(const std::string &s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"editlens: multilingual wiki edit analytics"};
  app.require_subcommand(1);
  std::function<void()> action;

  // ingest
  std::string in_input, in_out;
  std::string drop_bots = "true", keep_minor = "true", ns_only = "true";
  double max_malformed = 0.10;
  auto *ingest = app.add_subcommand("ingest", "Parse and filter edit records");
  ingest->add_option("--input", in_input, "JSON-lines edit records")->required();
  ingest->add_option("--out", in_out, "Output records.bin")->required();
  ingest->add_option("--drop-bots", drop_bots, "true|false");
  ingest->add_option("--keep-minor", keep_minor, "true|false");
  ingest->add_option("--article-namespace-only", ns_only, "true|false");
  ingest->add_option("--max-malformed", max_malformed,
                     "Maximum malformed line fraction")
      ->check(CLI::Range(0.0, 1.0));
  ingest->callback([&] {
    action = [&] {
      editlens::KeyValueConfig c;
      c.Set("drop-bots", drop_bots);
      c.Set("keep-minor", keep_minor);
      c.Set("article-namespace-only", ns_only);
      const auto policy = editlens::FilterPolicy::FromConfig(c);
      const auto s = editlens::IngestStage(in_input, policy, max_malformed, in_out);
      std::cout << "lines " << s.lines << " malformed " << s.malformed
                << " duplicates " << s.duplicates << " bots " << s.dropped_bot
                << " non_article " << s.dropped_namespace << " minor "
                << s.dropped_minor << " kept " << s.kept << "\n";
    };
  });

  // sessions
  std::string se_records, se_out;
  int64_t gap = editlens::kDefaultGapSeconds;
  auto *sessions = app.add_subcommand("sessions", "Build article edit sessions");
  sessions->add_option("--records", se_records)->required();
  sessions->add_option("--out", se_out)->required();
  sessions->add_option("--gap-seconds", gap)->check(CLI::PositiveNumber);
  sessions->callback([&] {
    action = [&] {
      std::cout << "sessions " << editlens::SessionsStage(se_records, gap, se_out)
                << "\n";
    };
  });

  // classify
  std::string cl_sessions, cl_out, rank_by = "sessions";
  int max_langs = editlens::kDefaultMaxLangs;
  auto *classify = app.add_subcommand("classify", "Profile multilingual editors");
  classify->add_option("--sessions", cl_sessions)->required();
  classify->add_option("--out", cl_out)->required();
  classify->add_option("--max-langs", max_langs)->check(CLI::PositiveNumber);
  classify->add_option("--rank-by", rank_by, "sessions|edits");
  classify->callback([&] {
    action = [&] {
      const auto r = editlens::ClassifyStage(cl_sessions, max_langs,
                                             ParseRankBy(rank_by), cl_out);
      std::cout << "profiles " << r.profiles.size() << " monolingual_excluded "
                << r.monolingual_excluded << " outliers_excluded "
                << r.outliers_excluded << "\n";
    };
  });

  // diff
  std::string df_sessions, df_revisions, df_profiles, df_out;
  auto *diff = app.add_subcommand("diff", "Diff session pre/post revisions");
  diff->add_option("--sessions", df_sessions)->required();
  diff->add_option("--revisions", df_revisions)->required();
  diff->add_option("--profiles", df_profiles, "Restrict to profiled editors");
  diff->add_option("--out", df_out)->required();
  diff->callback([&] {
    action = [&] {
      std::cout << "session_diffs "
                << editlens::DiffStage(df_sessions, df_revisions,
                                       OptionalPath(df_profiles), df_out)
                << "\n";
    };
  });

  // metrics
  std::string me_pairs, me_tags, me_out;
  editlens::MetricsStageOptions mo;
  int64_t me_seed = -1;
  auto *metrics = app.add_subcommand("metrics", "Per-editor metrics");
  metrics->add_option("--pairs", me_pairs)->required();
  metrics->add_option("--tags", me_tags, "POS tag TSV");
  metrics->add_option("--out", me_out)->required();
  metrics->add_option("--sample-k", mo.sample_k)->check(CLI::PositiveNumber);
  metrics->add_option("--reps", mo.reps)->check(CLI::PositiveNumber);
  metrics->add_option("--seed", me_seed)->required()->check(CLI::NonNegativeNumber);
  metrics->add_flag("--fallback-tagger", mo.fallback_tagger,
                    "Tag untagged paragraphs with the built-in lexicon tagger");
  metrics->callback([&] {
    action = [&] {
      mo.seed = static_cast<uint64_t>(me_seed);
      std::cout << "metric_rows "
                << editlens::MetricsStage(me_pairs, OptionalPath(me_tags), mo, me_out)
                << "\n";
    };
  });

  // topics
  std::string tp_docs, tp_pairs, tp_revisions, tp_out, alpha = "auto",
                                                        beta = "auto", eps = "auto";
  double max_doc_freq = 0.5;
  int64_t tp_seed = -1;
  editlens::TopicOptions to;
  auto *topics = app.add_subcommand("topics", "Fit topics and cluster articles");
  topics->add_option("--docs", tp_docs, "Bag-of-words TSV (doc, term, count)");
  topics->add_option("--pairs", tp_pairs, "Build documents from session diffs");
  topics->add_option("--revisions", tp_revisions);
  topics->add_option("--max-doc-freq", max_doc_freq)->check(CLI::PositiveNumber);
  topics->add_option("--out", tp_out)->required();
  topics->add_option("--k", to.lda.k)->check(CLI::Range(2, 100000));
  topics->add_option("--alpha", alpha, "auto or > 0");
  topics->add_option("--beta", beta, "auto or > 0");
  topics->add_option("--iters", to.lda.iterations)->check(CLI::PositiveNumber);
  topics->add_option("--eps", eps, "auto or > 0");
  topics->add_option("--min-pts", to.min_pts)->check(CLI::PositiveNumber);
  topics->add_option("--top-terms", to.top_terms);
  topics->add_option("--seed", tp_seed)->required()->check(CLI::NonNegativeNumber);
  topics->callback([&] {
    action = [&] {
      editlens::KeyValueConfig c;
      c.Set("alpha", alpha);
      c.Set("beta", beta);
      c.Set("eps", eps);
      auto num = [&](const std::string &key) {
        if (c.GetString(key) == "auto") return 0.0;
        const double v = c.GetDouble(key);
        if (!(v > 0)) throw Error(ErrorCode::kConfig, "--" + key + " must be > 0");
        return v;
      };
      to.lda.alpha = num("alpha");
      to.lda.beta = num("beta");
      to.eps = num("eps");
      to.lda.seed = static_cast<uint64_t>(tp_seed);
      fs::path docs = tp_docs;
      if (docs.empty()) {
        if (tp_pairs.empty() || tp_revisions.empty()) {
          throw Error(ErrorCode::kConfig,
                      "topics needs --docs or both --pairs and --revisions");
        }
        docs = fs::path(tp_out).parent_path() / "docs.tsv";
        editlens::DocsStage(tp_pairs, tp_revisions, max_doc_freq, docs);
      }
      const auto result = editlens::TopicsStage(docs, to, tp_out);
      for (const auto &t : result) {
        std::cout << t.lang << ": docs " << t.doc_ids.size() << " clusters "
                  << t.clustering.medoids.size() << "\n";
      }
    };
  });

  // compare
  std::string cp_metrics, cp_profiles, cp_topics, cp_out, cp_sessions,
      cp_edit_scores, cp_languages;
  bool pooled = false;
  auto *compare = app.add_subcommand("compare", "Primary vs non-primary tests");
  compare->add_option("--metrics", cp_metrics)->required();
  compare->add_option("--profiles", cp_profiles)->required();
  compare->add_option("--topics", cp_topics)->required();
  compare->add_option("--out", cp_out, "Report directory")->required();
  compare->add_option("--sessions", cp_sessions, "Enables interest comparisons");
  compare->add_option("--edit-scores", cp_edit_scores,
                      "Enables topic-controlled means");
  compare->add_option("--languages", cp_languages, "Comma-separated editions");
  compare->add_flag("--pooled", pooled, "Pooled-variance t-test");
  compare->callback([&] {
    action = [&] {
      editlens::CompareOptions co;
      co.languages = ParseLanguages(cp_languages);
      co.variant = pooled ? editlens::TTestVariant::kPooled
                          : editlens::TTestVariant::kWelch;
      co.sessions = OptionalPath(cp_sessions);
      co.edit_scores = OptionalPath(cp_edit_scores);
      const auto rows = editlens::CompareStage(cp_metrics, cp_profiles,
                                               cp_topics, co, cp_out);
      std::cout << "comparisons " << rows.size() << "\n";
    };
  });

  // run
  std::string config_path;
  std::map<std::string, std::string> overrides;
  auto *run = app.add_subcommand("run", "Run every stage from one config");
  run->add_option("--config", config_path, "key = value config file")->required();
  for (const std::string &key : editlens::PipelineConfig::Keys()) {
    run->add_option_function<std::string>(
        "--" + key, [&overrides, key](const std::string &v) { overrides[key] = v; },
        "Overrides config key '" + key + "'");
  }
  run->callback([&] {
    action = [&] {
      editlens::KeyValueConfig c = editlens::KeyValueConfig::Load(config_path);
      for (const auto &[k, v] : overrides) c.Set(k, v);
      const auto cfg = editlens::PipelineConfig::FromConfig(
          c, fs::absolute(config_path).parent_path());
      const auto result = editlens::RunPipeline(cfg);
      for (const auto &s : result.stages) {
        std::cout << s.name << (s.skipped ? " (cached)" : " done") << "\n";
      }
      std::cout << "report " << result.report_dir.string() << "\n";
    };
  });

  // fixture
  std::string spec_path, fx_out;
  auto *fixture = app.add_subcommand("fixture", "Generate a synthetic corpus");
  fixture->add_option("--spec", spec_path, "Synthetic spec config")->required();
  fixture->add_option("--out", fx_out, "Output directory")->required();
  fixture->callback([&] {
    action = [&] {
      const auto spec = editlens::SyntheticSpec::FromConfig(
          editlens::KeyValueConfig::Load(spec_path));
      const auto s = editlens::GenerateFixture(spec, fx_out);
      std::cout << "records " << s.records << " revisions " << s.revisions
                << " sessions " << s.sessions << " bilingual_share "
                << editlens::FormatDouble(s.realized_bilingual_share) << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    action();
  } catch (const Error &e) {
    std::cerr << "editlens: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception &e) {
    std::cerr << "editlens: " << e.what() << "\n";
    return kExitStage;
  }
  return 0;
}
