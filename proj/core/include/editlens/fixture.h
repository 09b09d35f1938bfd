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

#ifndef EDITLENS_FIXTURE_H_
#define EDITLENS_FIXTURE_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "editlens/kvconfig.h"

namespace editlens {

// Parameters of a synthetic corpus with a known plant. Every editor has a
// latent paragraph-diversity level z ~ N(shift, 1), where the shift applies
// to editors whose primary edition is `target_lang`; visible edits touch and
// produce paragraphs whose distinct-word count tracks z.
struct SyntheticSpec {
  uint64_t seed = 1;
  std::string target_lang = "en";
  std::vector<std::string> other_langs = {"de", "es", "fr", "it", "pt",
                                          "nl", "sv", "pl", "ru", "ja"};
  int n_primary = 50;
  int n_nonprimary = 50;
  double bilingual_share = 0.773;
  double entropy_shift = 1.0;     // in latent standard deviations
  double article_rate = 0.1;      // chance of an article before a token
  double article_shift = 0.0;     // added to article_rate for primary editors
  double non_visible_rate = 0.1;  // sessions that only add link markup
  int n_topics = 5;
  int articles_per_topic = 12;
  int topic_words = 30;
  int general_words = 200;
  int paragraph_tokens = 40;

  // Noise the pipeline must discard.
  int n_monolingual = 10;
  int n_outliers = 2;  // editors active in every edition
  int n_bot_records = 20;
  int n_talk_records = 20;
  int n_malformed = 10;
  int n_duplicates = 10;

  int64_t start_ts = 1700000000;

  // Pipeline parameters written to the generated pipeline.cfg.
  int lda_k = 5;
  int lda_iterations = 200;

  static const std::set<std::string> &Keys();
  // Throws Error(kConfig) on unknown keys or invalid values.
  static SyntheticSpec FromConfig(const KeyValueConfig &config);
  // Throws Error(kInvalidArgument) when the spec cannot be realized.
  void Validate() const;
};

struct FixtureSummary {
  std::size_t records = 0;  // lines in records.jsonl, noise included
  std::size_t revisions = 0;
  std::size_t sessions = 0;
  double realized_bilingual_share = 0;
};

// Writes records.jsonl, revisions/<lang>/<rev>.txt, revisions/manifest.tsv,
// tags.tsv, ground_truth.json and pipeline.cfg under `out_dir`.
FixtureSummary GenerateFixture(const SyntheticSpec &spec,
                               const std::filesystem::path &out_dir);

}  // namespace editlens

#endif  // EDITLENS_FIXTURE_H_
