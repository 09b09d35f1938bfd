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

#include "editlens/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "editlens/error.h"
#include "editlens/random.h"
#include "editlens/text.h"

namespace editlens {
namespace {

constexpr std::string_view kEnglishArticles[] = {"the", "a", "an"};
constexpr std::string_view kGermanArticles[] = {
    "des", "die", "den", "der", "dem", "das",
    "eine", "eines", "einer", "einem", "einen", "ein"};
constexpr std::string_view kSpanishArticles[] = {
    "el", "la", "los", "las", "un", "una", "unos", "unas"};

struct MetricSlot {
  std::string_view metric;
  Aspect aspect;
  int n;  // n-gram order; 0 when not an entropy
  bool pos;
};

// Fixed output order of the proficiency measures.
constexpr MetricSlot kProficiencySlots[] = {
    {"ngram_entropy_1", Aspect::kPreEdit, 1, false},
    {"ngram_entropy_2", Aspect::kPreEdit, 2, false},
    {"ngram_entropy_3", Aspect::kPreEdit, 3, false},
    {"pos_entropy_1", Aspect::kPreEdit, 1, true},
    {"pos_entropy_2", Aspect::kPreEdit, 2, true},
    {"pos_entropy_3", Aspect::kPreEdit, 3, true},
    {"ngram_entropy_1", Aspect::kDelta, 1, false},
    {"ngram_entropy_2", Aspect::kDelta, 2, false},
    {"ngram_entropy_3", Aspect::kDelta, 3, false},
    {"pos_entropy_1", Aspect::kDelta, 1, true},
    {"pos_entropy_2", Aspect::kDelta, 2, true},
    {"pos_entropy_3", Aspect::kDelta, 3, true},
    {"article_fraction", Aspect::kDiff, 0, false},
};
constexpr std::size_t kNumSlots = std::size(kProficiencySlots);

double EntropyOfCounts(const std::unordered_map<std::string, int64_t> &counts,
                       int64_t total) {
  if (counts.size() <= 1) return 0.0;
  // H = log2 N - (1/N) sum c log2 c; exact for uniform counts up to rounding.
  double weighted = 0.0;
  for (const auto &[gram, c] : counts) {
    weighted += static_cast<double>(c) * std::log2(static_cast<double>(c));
  }
  const double n = static_cast<double>(total);
  return std::max(0.0, std::log2(n) - weighted / n);
}

void ParseInt(const std::string &field, const char *what, int *out) {
  try {
    std::size_t used = 0;
    *out = std::stoi(field, &used);
    if (used != field.size()) throw std::invalid_argument(what);
  } catch (const std::exception &) {
    throw Error(ErrorCode::kMalformedInput,
                std::string("bad ") + what + ": '" + field + "'");
  }
}

double ParseDouble(const std::string &field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument("value");
    return v;
  } catch (const std::exception &) {
    throw Error(ErrorCode::kMalformedInput, "bad value: '" + field + "'");
  }
}

}  // namespace

std::string_view AspectName(Aspect aspect) {
  switch (aspect) {
    case Aspect::kSession: return "session";
    case Aspect::kPreEdit: return "pre_edit";
    case Aspect::kDelta: return "delta";
    case Aspect::kDiff: return "diff";
  }
  return "session";
}

double NgramEntropy(std::span<const std::string> tokens, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  if (tokens.size() < static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kTooShort,
                std::to_string(tokens.size()) + " tokens for n=" +
                    std::to_string(n));
  }
  std::unordered_map<std::string, int64_t> counts;
  const std::size_t grams = tokens.size() - n + 1;
  for (std::size_t i = 0; i < grams; ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return EntropyOfCounts(counts, static_cast<int64_t>(grams));
}

TaggedTokens::TaggedTokens(std::vector<std::string> tokens_in,
                           std::vector<std::string> tags_in)
    : tokens(std::move(tokens_in)), tags(std::move(tags_in)) {
  if (tokens.size() != tags.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "token/tag length mismatch: " + std::to_string(tokens.size()) +
                    " vs " + std::to_string(tags.size()));
  }
}

double PosEntropy(const TaggedTokens &tagged, int n) {
  return NgramEntropy(tagged.tags, n);
}

std::span<const std::string_view> ArticleWords(std::string_view lang) {
  if (lang == "en") return kEnglishArticles;
  if (lang == "de") return kGermanArticles;
  if (lang == "es") return kSpanishArticles;
  return {};
}

bool SupportsArticleFraction(std::string_view lang) {
  return !ArticleWords(lang).empty();
}

double ArticleFraction(std::span<const std::string> diff_tokens,
                       std::string_view lang) {
  const auto articles = ArticleWords(lang);
  if (articles.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no article list for edition '" + std::string(lang) + "'");
  }
  if (diff_tokens.empty()) throw Error(ErrorCode::kEmptyDiff, "no tokens");
  std::size_t hits = 0;
  for (const std::string &t : diff_tokens) {
    const std::string folded = FoldCase(t);
    if (std::find(articles.begin(), articles.end(), folded) != articles.end()) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(diff_tokens.size());
}

double EditorMaxScore(std::span<const double> scores, int k, int reps,
                      uint64_t seed) {
  if (k < 1 || reps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k and reps must be positive");
  }
  if (scores.size() < static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::kInsufficientEdits,
                std::to_string(scores.size()) + " scores for k=" +
                    std::to_string(k));
  }
  const uint64_t base = SplitMix64(seed);
  std::vector<std::pair<uint64_t, std::size_t>> keyed(scores.size());
  double total = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const uint64_t salt =
          (static_cast<uint64_t>(rep) << 32) ^ static_cast<uint64_t>(i);
      keyed[i] = {SplitMix64(base ^ SplitMix64(salt)), i};
    }
    std::partial_sort(keyed.begin(), keyed.begin() + k, keyed.end());
    double best = scores[keyed[0].second];
    for (int j = 1; j < k; ++j) best = std::max(best, scores[keyed[j].second]);
    total += best;
  }
  return total / reps;
}

TextMeasures MeasureText(std::string_view text) {
  TextMeasures m;
  m.chars = static_cast<double>(CountChars(text));
  m.words = static_cast<double>(Tokenize(text).size());
  m.sentences = static_cast<double>(CountSentences(text));
  return m;
}

TextMeasures DeltaMeasures(std::string_view pre_text,
                           std::string_view post_text) {
  const TextMeasures pre = MeasureText(pre_text);
  const TextMeasures post = MeasureText(post_text);
  return {post.chars - pre.chars, post.words - pre.words,
          post.sentences - pre.sentences};
}

std::optional<EngagementMetrics> ComputeEngagement(
    std::span<const SessionDiffRecord> sessions) {
  if (sessions.empty()) return std::nullopt;
  EngagementMetrics m;
  m.n_sessions = static_cast<int>(sessions.size());
  double multi_edits = 0;
  int multi_sessions = 0;
  double minutes = 0, chars = 0, words = 0, sentences = 0;
  int non_visible = 0;
  for (const SessionDiffRecord &s : sessions) {
    if (s.n_revisions >= 2) {
      multi_edits += s.n_revisions;
      ++multi_sessions;
    }
    minutes += static_cast<double>(s.end_ts - s.start_ts) / 60.0;
    for (const ParagraphPair &p : s.diff.pairs) {
      const TextMeasures d = DeltaMeasures(p.pre_text, p.post_text);
      chars += d.chars;
      words += d.words;
      sentences += d.sentences;
    }
    if (s.diff.all_non_visible) ++non_visible;
  }
  const double n = static_cast<double>(sessions.size());
  if (multi_sessions > 0) m.edits_per_session = multi_edits / multi_sessions;
  m.session_minutes = minutes / n;
  m.delta_chars = chars / n;
  m.delta_words = words / n;
  m.delta_sentences = sentences / n;
  m.non_visible_fraction = non_visible / n;
  return m;
}

TagStore TagStore::Load(std::istream &in) {
  TagStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = SplitString(line, '\t');
    if (f.size() != 5) {
      throw Error(ErrorCode::kMalformedInput,
                  "tags line " + std::to_string(line_no) +
                      ": expected 5 tab-separated fields");
    }
    int paragraph = 0;
    ParseInt(f[2], "paragraph_index", &paragraph);
    store.Add(f[0], f[1], paragraph, f[3], f[4]);
  }
  return store;
}

void TagStore::Add(const std::string &lang, const std::string &rev,
                   int paragraph, std::string token, std::string tag) {
  TaggedTokens &t = paragraphs_[{lang, rev, paragraph}];
  t.tokens.push_back(std::move(token));
  t.tags.push_back(std::move(tag));
}

const TaggedTokens *TagStore::Find(const std::string &lang,
                                   const std::string &rev,
                                   int paragraph) const {
  auto it = paragraphs_.find({lang, rev, paragraph});
  return it == paragraphs_.end() ? nullptr : &it->second;
}

MetricsResult ComputeEditorMetrics(std::span<const SessionDiffRecord> diffs,
                                   const TagStore *tags,
                                   const PosTagger *tagger,
                                   const MetricOptions &options) {
  std::map<std::pair<std::string, std::string>,
           std::vector<const SessionDiffRecord *>>
      by_editor;
  for (const SessionDiffRecord &d : diffs) {
    by_editor[{d.editor_id, d.lang}].push_back(&d);
  }

  MetricsResult result;
  std::map<std::pair<std::string, std::size_t>, int> exclusions;

  // Resolves tags for one side of a pair; nullopt when unavailable.
  auto tags_for = [&](const std::string &lang, const std::string &rev,
                      int line, const std::string &text)
      -> std::optional<TaggedTokens> {
    if (line < 0 || rev.empty()) return std::nullopt;
    if (tags != nullptr) {
      if (const TaggedTokens *t = tags->Find(lang, rev, line)) return *t;
    }
    if (tagger != nullptr) return tagger->Tag(lang, Tokenize(text));
    ++result.untagged_paragraphs;
    return std::nullopt;
  };

  for (const auto &[key, sessions] : by_editor) {
    const auto &[editor, lang] = key;
    std::vector<SessionDiffRecord> owned;
    owned.reserve(sessions.size());
    for (const auto *s : sessions) owned.push_back(*s);

    if (auto e = ComputeEngagement(owned)) {
      auto add = [&](std::string_view metric, double value, int n) {
        result.rows.push_back({editor, lang, std::string(metric),
                               std::string(AspectName(Aspect::kSession)), value,
                               n});
      };
      if (e->edits_per_session) {
        int multi = 0;
        for (const auto &s : owned) multi += s.n_revisions >= 2 ? 1 : 0;
        add("edits_per_session", *e->edits_per_session, multi);
      }
      add("session_minutes", e->session_minutes, e->n_sessions);
      add("delta_chars", e->delta_chars, e->n_sessions);
      add("delta_words", e->delta_words, e->n_sessions);
      add("delta_sentences", e->delta_sentences, e->n_sessions);
      add("non_visible_fraction", e->non_visible_fraction, e->n_sessions);
    }

    std::vector<std::vector<double>> scores(kNumSlots);
    auto record = [&](std::size_t slot, const std::string &article,
                      double value) {
      scores[slot].push_back(value);
      result.edit_scores.push_back(
          {editor, lang, article, std::string(kProficiencySlots[slot].metric),
           std::string(AspectName(kProficiencySlots[slot].aspect)), value});
    };

    for (const SessionDiffRecord &s : owned) {
      std::vector<double> delta_sum(kNumSlots, 0.0);
      std::vector<bool> delta_seen(kNumSlots, false);
      for (const ParagraphPair &p : s.diff.pairs) {
        if (!p.visible) continue;
        const auto pre_tokens = Tokenize(p.pre_text);
        const auto post_tokens = Tokenize(p.post_text);
        const auto pre_tags = tags_for(lang, s.pre_rev, p.pre_line, p.pre_text);
        const auto post_tags =
            tags_for(lang, s.post_rev, p.post_line, p.post_text);

        for (std::size_t slot = 0; slot < kNumSlots; ++slot) {
          const MetricSlot &m = kProficiencySlots[slot];
          const auto n = static_cast<std::size_t>(m.n);
          if (m.aspect == Aspect::kDiff) {
            if (SupportsArticleFraction(lang) && !p.inserted_tokens.empty()) {
              record(slot, s.article_id,
                     ArticleFraction(p.inserted_tokens, lang));
            }
            continue;
          }
          const std::vector<std::string> *pre_seq = nullptr;
          const std::vector<std::string> *post_seq = nullptr;
          if (m.pos) {
            if (pre_tags) pre_seq = &pre_tags->tags;
            if (post_tags) post_seq = &post_tags->tags;
          } else {
            pre_seq = &pre_tokens;
            post_seq = &post_tokens;
          }
          if (m.aspect == Aspect::kPreEdit) {
            if (pre_seq != nullptr && pre_seq->size() >= n) {
              record(slot, s.article_id, NgramEntropy(*pre_seq, m.n));
            }
          } else if (pre_seq != nullptr && post_seq != nullptr &&
                     pre_seq->size() >= n && post_seq->size() >= n) {
            delta_sum[slot] +=
                NgramEntropy(*post_seq, m.n) - NgramEntropy(*pre_seq, m.n);
            delta_seen[slot] = true;
          }
        }
      }
      for (std::size_t slot = 0; slot < kNumSlots; ++slot) {
        if (delta_seen[slot]) record(slot, s.article_id, delta_sum[slot]);
      }
    }

    for (std::size_t slot = 0; slot < kNumSlots; ++slot) {
      const MetricSlot &m = kProficiencySlots[slot];
      if (m.aspect == Aspect::kDiff && !SupportsArticleFraction(lang)) continue;
      const std::string aspect(AspectName(m.aspect));
      if (scores[slot].size() < static_cast<std::size_t>(options.sample_k)) {
        ++exclusions[{lang, slot}];
        continue;
      }
      const uint64_t seed =
          SubSeed(options.seed, "max-of-k/" + editor + "/" + lang + "/" +
                                    std::string(m.metric) + "/" + aspect);
      const double value = EditorMaxScore(scores[slot], options.sample_k,
                                          options.reps, seed);
      result.rows.push_back({editor, lang, std::string(m.metric), aspect,
                             value, static_cast<int>(scores[slot].size())});
    }
  }

  for (const auto &[key, count] : exclusions) {
    const MetricSlot &m = kProficiencySlots[key.second];
    result.exclusions.push_back({key.first, std::string(m.metric),
                                 std::string(AspectName(m.aspect)), count});
  }
  return result;
}

void WriteMetricsCsv(std::span<const MetricRow> rows, std::ostream &out) {
  out << "editor_id,lang,metric,aspect,value,n_items\n";
  for (const MetricRow &r : rows) {
    out << CsvEscape(r.editor_id) << ',' << CsvEscape(r.lang) << ','
        << r.metric << ',' << r.aspect << ',' << FormatDouble(r.value) << ','
        << r.n_items << '\n';
  }
}

std::vector<MetricRow> ReadMetricsCsv(std::istream &in) {
  std::vector<MetricRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || Trim(line).empty()) continue;
    const auto f = ParseCsvLine(line);
    if (f.size() != 6) {
      throw Error(ErrorCode::kMalformedInput,
                  "metrics line " + std::to_string(line_no));
    }
    MetricRow r{f[0], f[1], f[2], f[3], ParseDouble(f[4]), 0};
    ParseInt(f[5], "n_items", &r.n_items);
    rows.push_back(std::move(r));
  }
  return rows;
}

void WriteEditScoresCsv(std::span<const EditScoreRow> rows, std::ostream &out) {
  out << "editor_id,lang,article_id,metric,aspect,value\n";
  for (const EditScoreRow &r : rows) {
    out << CsvEscape(r.editor_id) << ',' << CsvEscape(r.lang) << ','
        << CsvEscape(r.article_id) << ',' << r.metric << ',' << r.aspect << ','
        << FormatDouble(r.value) << '\n';
  }
}

std::vector<EditScoreRow> ReadEditScoresCsv(std::istream &in) {
  std::vector<EditScoreRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (++line_no == 1 || Trim(line).empty()) continue;
    const auto f = ParseCsvLine(line);
    if (f.size() != 6) {
      throw Error(ErrorCode::kMalformedInput,
                  "edit scores line " + std::to_string(line_no));
    }
    rows.push_back({f[0], f[1], f[2], f[3], f[4], ParseDouble(f[5])});
  }
  return rows;
}

void WriteExclusionsCsv(std::span<const MetricExclusion> rows,
                        std::ostream &out) {
  out << "lang,metric,aspect,excluded_editors\n";
  for (const MetricExclusion &r : rows) {
    out << CsvEscape(r.lang) << ',' << r.metric << ',' << r.aspect << ','
        << r.editors << '\n';
  }
}

}  // namespace editlens
