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

#ifndef EDITLENS_METRICS_H_
#define EDITLENS_METRICS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "editlens/wikitext.h"

namespace editlens {

enum class Aspect { kSession, kPreEdit, kDelta, kDiff };
std::string_view AspectName(Aspect aspect);

// Shannon entropy in bits of the empirical n-gram distribution of `tokens`.
// Throws Error(kTooShort) when |tokens| < n.
double NgramEntropy(std::span<const std::string> tokens, int n);

// Tokens with one part-of-speech tag each.
struct TaggedTokens {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;

  TaggedTokens() = default;
  // Throws Error(kInvalidArgument) unless the lengths agree.
  TaggedTokens(std::vector<std::string> tokens, std::vector<std::string> tags);
};

// NgramEntropy over the tag sequence.
double PosEntropy(const TaggedTokens &tagged, int n);

// Definite and indefinite articles tracked for an edition; empty when the
// edition is not supported.
std::span<const std::string_view> ArticleWords(std::string_view lang);
bool SupportsArticleFraction(std::string_view lang);

// Share of tokens that are (case-insensitively) articles of `lang`.
// Throws Error(kEmptyDiff) for no tokens, Error(kInvalidArgument) for an
// unsupported edition.
double ArticleFraction(std::span<const std::string> diff_tokens,
                       std::string_view lang);

// Max-of-k summary: the mean, over `reps` uniform k-subsets of `scores`, of
// the subset maximum. Each repetition assigns every score position an
// independent random key and keeps the k smallest keys; keys depend only on
// (seed, rep, position), so appending a score that is at least the current
// maximum can only raise the result. Throws Error(kInsufficientEdits) when
// |scores| < k.
double EditorMaxScore(std::span<const double> scores, int k, int reps,
                      uint64_t seed);

struct TextMeasures {
  double chars = 0;
  double words = 0;
  double sentences = 0;
};
TextMeasures MeasureText(std::string_view text);
// measure(post) - measure(pre).
TextMeasures DeltaMeasures(std::string_view pre_text, std::string_view post_text);

struct EngagementMetrics {
  // Mean revisions per session over sessions with at least two revisions;
  // unset when there are none.
  std::optional<double> edits_per_session;
  double session_minutes = 0;
  double delta_chars = 0;
  double delta_words = 0;
  double delta_sentences = 0;
  double non_visible_fraction = 0;
  int n_sessions = 0;
};

// Per-editor means over that editor's sessions in one edition. Returns
// nullopt for an empty session list.
std::optional<EngagementMetrics> ComputeEngagement(
    std::span<const SessionDiffRecord> sessions);

// Part-of-speech tagger interface. Implementations must be deterministic.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual TaggedTokens Tag(std::string_view lang,
                           std::span<const std::string> tokens) const = 0;
};

// Lexicon + suffix-rule tagger with a coarse tag set. Only meant for tests
// and smoke runs; real analyses supply pre-tagged tokens.
class LexiconTagger : public PosTagger {
 public:
  TaggedTokens Tag(std::string_view lang,
                   std::span<const std::string> tokens) const override;
  std::string TagToken(std::string_view lang, std::string_view token) const;
};

// Pre-tagged paragraphs keyed by (lang, revision, line index in that
// revision). Input rows: lang \t rev \t paragraph_index \t token \t tag.
class TagStore {
 public:
  static TagStore Load(std::istream &in);

  void Add(const std::string &lang, const std::string &rev, int paragraph,
           std::string token, std::string tag);
  const TaggedTokens *Find(const std::string &lang, const std::string &rev,
                           int paragraph) const;
  std::size_t paragraphs() const { return paragraphs_.size(); }

 private:
  std::map<std::tuple<std::string, std::string, int>, TaggedTokens> paragraphs_;
};

struct MetricOptions {
  int sample_k = 3;
  int reps = 100;
  uint64_t seed = 42;
};

// One per-editor summary value. `n_items` is the number of sessions or
// edits the value summarizes.
struct MetricRow {
  std::string editor_id;
  std::string lang;
  std::string metric;
  std::string aspect;
  double value = 0;
  int n_items = 0;
};

// One per-edit proficiency score, kept for topic-controlled comparisons.
struct EditScoreRow {
  std::string editor_id;
  std::string lang;
  std::string article_id;
  std::string metric;
  std::string aspect;
  double value = 0;
};

struct MetricExclusion {
  std::string lang;
  std::string metric;
  std::string aspect;
  int editors = 0;  // editors with fewer than sample_k scores
};

struct MetricsResult {
  std::vector<MetricRow> rows;
  std::vector<EditScoreRow> edit_scores;
  std::vector<MetricExclusion> exclusions;
  std::size_t untagged_paragraphs = 0;
};

// Engagement means and max-of-k proficiency summaries per (editor, lang).
//
// Proficiency edits are visible paragraph pairs:
//   pre_edit: entropy of the pre-edit paragraph, one score per pair;
//   delta:    per session, sum over pairs of measure(post) - measure(pre);
//   diff:     article fraction of the inserted tokens, one score per pair.
// Paragraphs shorter than n are skipped for that n. POS tags come from
// `tags`, falling back to `tagger` when given; otherwise untagged
// paragraphs are skipped and counted.
MetricsResult ComputeEditorMetrics(std::span<const SessionDiffRecord> diffs,
                                   const TagStore *tags,
                                   const PosTagger *tagger,
                                   const MetricOptions &options);

void WriteMetricsCsv(std::span<const MetricRow> rows, std::ostream &out);
std::vector<MetricRow> ReadMetricsCsv(std::istream &in);
void WriteEditScoresCsv(std::span<const EditScoreRow> rows, std::ostream &out);
std::vector<EditScoreRow> ReadEditScoresCsv(std::istream &in);
void WriteExclusionsCsv(std::span<const MetricExclusion> rows,
                        std::ostream &out);

}  // namespace editlens

#endif  // EDITLENS_METRICS_H_
