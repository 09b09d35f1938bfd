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

#ifndef EDITLENS_PIPELINE_H_
#define EDITLENS_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "editlens/ingest.h"
#include "editlens/kvconfig.h"
#include "editlens/sessions.h"
#include "editlens/stats.h"
#include "editlens/topics.h"

namespace editlens {

namespace fs = std::filesystem;

// Stage entry points. Each reads its inputs from files and persists its
// output, so the CLI subcommands and the orchestrator share one code path.

struct IngestSummary {
  std::size_t lines = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t dropped_bot = 0;
  std::size_t dropped_namespace = 0;
  std::size_t dropped_minor = 0;
  std::size_t kept = 0;
};
IngestSummary IngestStage(const fs::path &input, const FilterPolicy &policy,
                          double max_malformed_fraction, const fs::path &out);

std::size_t SessionsStage(const fs::path &records, int64_t gap_seconds,
                          const fs::path &out);

// Writes profiles.csv and, next to it, language_histogram.csv.
ProfileReport ClassifyStage(const fs::path &sessions, int max_langs,
                            RankingBasis basis, const fs::path &out);

// When `profiles` is given only sessions of profiled editors are diffed.
std::size_t DiffStage(const fs::path &sessions, const fs::path &revisions,
                      const std::optional<fs::path> &profiles,
                      const fs::path &out);

struct MetricsStageOptions {
  int sample_k = 3;
  int reps = 100;
  uint64_t seed = 42;
  bool fallback_tagger = false;
};
// Writes metrics.csv plus <stem>_edits.csv and <stem>_exclusions.csv.
std::size_t MetricsStage(const fs::path &pairs,
                         const std::optional<fs::path> &tags,
                         const MetricsStageOptions &options,
                         const fs::path &out);

// Bag-of-words documents "lang:article" from the latest post-session
// revision of each diffed article. Terms are case-folded tokens; terms in
// more than `max_doc_freq` of an edition's documents are dropped.
std::size_t DocsStage(const fs::path &pairs, const fs::path &revisions,
                      double max_doc_freq, const fs::path &out);

// Fits each edition in the bag-of-words file independently. Editions with
// fewer than two documents are skipped.
std::vector<LanguageTopics> TopicsStage(const fs::path &docs,
                                        const TopicOptions &options,
                                        const fs::path &out);

struct CompareOptions {
  std::vector<std::string> languages;  // empty: every edition in profiles
  TTestVariant variant = TTestVariant::kWelch;
  std::optional<fs::path> sessions;     // enables interest comparisons
  std::optional<fs::path> edit_scores;  // enables topic-controlled means
};
// Writes comparisons.csv and plot_data.csv into `out_dir`, plus
// interest.csv, interest_chi2.csv and topic_controlled.csv when the
// optional inputs are available.
std::vector<GroupComparison> CompareStage(const fs::path &metrics,
                                          const fs::path &profiles,
                                          const fs::path &topics,
                                          const CompareOptions &options,
                                          const fs::path &out_dir);

struct PipelineConfig {
  fs::path records;
  fs::path revisions;
  std::optional<fs::path> tags;
  fs::path out;

  FilterPolicy policy;
  double max_malformed = 0.10;
  int64_t gap_seconds = kDefaultGapSeconds;
  int max_langs = kDefaultMaxLangs;
  RankingBasis rank_by = RankingBasis::kSessions;
  std::vector<std::string> languages;

  TopicOptions topics;
  double max_doc_freq = 0.5;

  int sample_k = 3;
  int reps = 100;
  uint64_t seed = 0;
  bool pooled = false;

  // Keys accepted in the config file; each mirrors a `run` flag.
  static const std::set<std::string> &Keys();

  // Relative paths resolve against `base_dir`. Throws Error(kConfig).
  static PipelineConfig FromConfig(const KeyValueConfig &config,
                                   const fs::path &base_dir);
};

struct StageRun {
  std::string name;
  bool skipped = false;  // inputs and parameters unchanged since last run
};

struct PipelineResult {
  std::vector<StageRun> stages;
  fs::path report_dir;
};

// ingest -> sessions -> classify -> diff -> metrics -> docs -> topics ->
// compare. Every intermediate lands in config.out. A stage whose input
// contents and parameters hash to its stored stamp is skipped. Failures
// are rethrown as Error(kStage) naming the stage.
PipelineResult RunPipeline(const PipelineConfig &config);

}  // namespace editlens

#endif  // EDITLENS_PIPELINE_H_
