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

#ifndef EDITLENS_SESSIONS_H_
#define EDITLENS_SESSIONS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editlens/ingest.h"

namespace editlens {

inline constexpr int64_t kDefaultGapSeconds = 3600;
inline constexpr int kDefaultMaxLangs = 10;

// A maximal burst of one editor's revisions to one article in one edition.
// Revisions are sorted by timestamp and no consecutive gap exceeds the
// cutoff used to build the session.
struct ArticleEditSession {
  std::string editor_id;
  std::string article_id;
  std::string lang;
  std::vector<EditRecord> revisions;
  int64_t start_ts = 0;
  int64_t end_ts = 0;
};

// Splits each (editor, article, lang) record stream into sessions. A gap
// strictly greater than `cutoff_seconds` starts a new session. Output is
// ordered by (editor, lang, article, start_ts) regardless of input order.
std::vector<ArticleEditSession> BuildSessions(
    std::span<const EditRecord> records,
    int64_t cutoff_seconds = kDefaultGapSeconds);

enum class RankingBasis { kSessions, kEdits };

// How the primary language was chosen.
enum class TieBreak { kNone, kSecondaryCount, kLanguageCode };

struct EditorProfile {
  std::string editor_id;
  std::map<std::string, int64_t> sessions_by_lang;
  std::map<std::string, int64_t> edits_by_lang;
  std::string primary_lang;
  int n_langs = 0;
  TieBreak tie_break = TieBreak::kNone;

  bool multilingual() const { return n_langs >= 2; }
};

struct ProfileReport {
  std::vector<EditorProfile> profiles;  // sorted by editor_id
  std::size_t monolingual_excluded = 0;
  std::size_t outliers_excluded = 0;  // more than max_langs editions
};

// Builds profiles for multilingual editors with at most `max_langs`
// editions. The primary language maximizes the ranking count; ties go to
// the other count (edits when ranking by sessions, and vice versa), then to
// the smallest language code.
ProfileReport ProfileEditors(std::span<const ArticleEditSession> sessions,
                             int max_langs = kDefaultMaxLangs,
                             RankingBasis basis = RankingBasis::kSessions);

enum class GroupLabel { kPrimary, kNonPrimary, kNotPresent };

std::string_view GroupLabelName(GroupLabel label);
GroupLabel Classify(const EditorProfile &profile, std::string_view lang);

struct LanguageHistograms {
  // n_langs -> share of profiles.
  std::map<int, double> n_langs_share;
  // edition -> (primary language -> share of editors present in edition).
  std::map<std::string, std::map<std::string, double>> primary_composition;

  double share_with(int n_langs) const;
};

LanguageHistograms ComputeLanguageHistograms(
    std::span<const EditorProfile> profiles);

// sessions.bin: JSON lines, one session per line.
void WriteSessions(std::span<const ArticleEditSession> sessions,
                   std::ostream &out);
std::vector<ArticleEditSession> ReadSessions(std::istream &in);

// profiles.csv: editor_id,n_langs,primary_lang,lang,session_count,group
// with one row per (editor, edition with activity).
void WriteProfilesCsv(std::span<const EditorProfile> profiles,
                      std::ostream &out);

struct ProfileRow {
  std::string editor_id;
  int n_langs = 0;
  std::string primary_lang;
  std::string lang;
  int64_t session_count = 0;
  GroupLabel group = GroupLabel::kNotPresent;
};
std::vector<ProfileRow> ReadProfilesCsv(std::istream &in);

}  // namespace editlens

#endif  // EDITLENS_SESSIONS_H_
