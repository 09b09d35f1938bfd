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

#include "editlens/sessions.h"

#include <algorithm>
#include <tuple>

#include "editlens/error.h"
#include "editlens/text.h"
#include "json.hpp"

namespace editlens {
namespace {

using SessionKey = std::tuple<std::string, std::string, std::string>;

}  // namespace

std::vector<ArticleEditSession> BuildSessions(
    std::span<const EditRecord> records, int64_t cutoff_seconds) {
  if (cutoff_seconds <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "cutoff must be positive");
  }
  // Key order (editor, lang, article) gives the canonical output order.
  std::map<SessionKey, std::vector<const EditRecord *>> streams;
  for (const EditRecord &r : records) {
    streams[{r.editor_id, r.lang, r.article_id}].push_back(&r);
  }

  std::vector<ArticleEditSession> sessions;
  for (auto &[key, stream] : streams) {
    std::sort(stream.begin(), stream.end(),
              [](const EditRecord *a, const EditRecord *b) {
                return std::tie(a->timestamp, a->revision_id) <
                       std::tie(b->timestamp, b->revision_id);
              });
    ArticleEditSession *current = nullptr;
    for (const EditRecord *r : stream) {
      if (current == nullptr || r->timestamp - current->end_ts > cutoff_seconds) {
        sessions.emplace_back();
        current = &sessions.back();
        current->editor_id = r->editor_id;
        current->article_id = r->article_id;
        current->lang = r->lang;
        current->start_ts = r->timestamp;
      }
      current->revisions.push_back(*r);
      current->end_ts = r->timestamp;
    }
  }
  return sessions;
}

ProfileReport ProfileEditors(std::span<const ArticleEditSession> sessions,
                             int max_langs, RankingBasis basis) {
  std::map<std::string, EditorProfile> by_editor;
  for (const ArticleEditSession &s : sessions) {
    EditorProfile &p = by_editor[s.editor_id];
    p.editor_id = s.editor_id;
    p.sessions_by_lang[s.lang] += 1;
    p.edits_by_lang[s.lang] += static_cast<int64_t>(s.revisions.size());
  }

  ProfileReport report;
  for (auto &[editor, p] : by_editor) {
    p.n_langs = static_cast<int>(p.sessions_by_lang.size());
    if (p.n_langs < 2) {
      ++report.monolingual_excluded;
      continue;
    }
    if (p.n_langs > max_langs) {
      ++report.outliers_excluded;
      continue;
    }
    const auto &rank = basis == RankingBasis::kSessions ? p.sessions_by_lang
                                                        : p.edits_by_lang;
    const auto &second = basis == RankingBasis::kSessions ? p.edits_by_lang
                                                          : p.sessions_by_lang;
    int64_t best = -1;
    for (const auto &[lang, count] : rank) best = std::max(best, count);
    std::vector<std::string> tied;
    for (const auto &[lang, count] : rank) {
      if (count == best) tied.push_back(lang);
    }
    if (tied.size() == 1) {
      p.primary_lang = tied.front();
      p.tie_break = TieBreak::kNone;
    } else {
      int64_t best_second = -1;
      for (const auto &lang : tied) {
        best_second = std::max(best_second, second.at(lang));
      }
      std::vector<std::string> still_tied;
      for (const auto &lang : tied) {
        if (second.at(lang) == best_second) still_tied.push_back(lang);
      }
      // `tied` is in map order, so front() is the smallest code.
      p.primary_lang = still_tied.front();
      p.tie_break = still_tied.size() == 1 ? TieBreak::kSecondaryCount
                                           : TieBreak::kLanguageCode;
    }
    report.profiles.push_back(std::move(p));
  }
  return report;
}

std::string_view GroupLabelName(GroupLabel label) {
  switch (label) {
    case GroupLabel::kPrimary: return "primary";
    case GroupLabel::kNonPrimary: return "non_primary";
    case GroupLabel::kNotPresent: return "not_present";
  }
  return "not_present";
}

GroupLabel Classify(const EditorProfile &profile, std::string_view lang) {
  auto it = profile.sessions_by_lang.find(std::string(lang));
  if (it == profile.sessions_by_lang.end() || it->second <= 0) {
    return GroupLabel::kNotPresent;
  }
  return profile.primary_lang == lang ? GroupLabel::kPrimary
                                      : GroupLabel::kNonPrimary;
}

double LanguageHistograms::share_with(int n_langs) const {
  auto it = n_langs_share.find(n_langs);
  return it == n_langs_share.end() ? 0.0 : it->second;
}

LanguageHistograms ComputeLanguageHistograms(
    std::span<const EditorProfile> profiles) {
  LanguageHistograms h;
  if (profiles.empty()) return h;
  std::map<int, int64_t> n_counts;
  std::map<std::string, std::map<std::string, int64_t>> comp_counts;
  std::map<std::string, int64_t> present;
  for (const EditorProfile &p : profiles) {
    ++n_counts[p.n_langs];
    for (const auto &[lang, count] : p.sessions_by_lang) {
      if (Classify(p, lang) == GroupLabel::kNotPresent) continue;
      ++comp_counts[lang][p.primary_lang];
      ++present[lang];
    }
  }
  const double total = static_cast<double>(profiles.size());
  for (const auto &[n, c] : n_counts) {
    h.n_langs_share[n] = static_cast<double>(c) / total;
  }
  for (const auto &[lang, comp] : comp_counts) {
    for (const auto &[primary, c] : comp) {
      h.primary_composition[lang][primary] =
          static_cast<double>(c) / static_cast<double>(present[lang]);
    }
  }
  return h;
}

void WriteSessions(std::span<const ArticleEditSession> sessions,
                   std::ostream &out) {
  for (const ArticleEditSession &s : sessions) {
    nlohmann::ordered_json obj;
    obj["editor"] = s.editor_id;
    obj["article"] = s.article_id;
    obj["lang"] = s.lang;
    obj["start"] = s.start_ts;
    obj["end"] = s.end_ts;
    nlohmann::ordered_json revs = nlohmann::ordered_json::array();
    for (const EditRecord &r : s.revisions) {
      nlohmann::ordered_json rev;
      rev["rev"] = r.revision_id;
      rev["ts"] = r.timestamp;
      rev["minor"] = r.is_minor;
      if (!r.title.empty()) rev["title"] = r.title;
      revs.push_back(std::move(rev));
    }
    obj["revisions"] = std::move(revs);
    out << obj.dump() << '\n';
  }
}

std::vector<ArticleEditSession> ReadSessions(std::istream &in) {
  std::vector<ArticleEditSession> sessions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      ArticleEditSession s;
      s.editor_id = obj.at("editor").get<std::string>();
      s.article_id = obj.at("article").get<std::string>();
      s.lang = obj.at("lang").get<std::string>();
      s.start_ts = obj.at("start").get<int64_t>();
      s.end_ts = obj.at("end").get<int64_t>();
      for (const auto &rev : obj.at("revisions")) {
        EditRecord r;
        r.editor_id = s.editor_id;
        r.article_id = s.article_id;
        r.lang = s.lang;
        r.revision_id = rev.at("rev").get<std::string>();
        r.timestamp = rev.at("ts").get<int64_t>();
        r.is_minor = rev.at("minor").get<bool>();
        r.title = rev.value("title", std::string());
        s.revisions.push_back(std::move(r));
      }
      sessions.push_back(std::move(s));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedInput,
                  "sessions line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return sessions;
}

void WriteProfilesCsv(std::span<const EditorProfile> profiles,
                      std::ostream &out) {
  out << "editor_id,n_langs,primary_lang,lang,session_count,group\n";
  for (const EditorProfile &p : profiles) {
    for (const auto &[lang, count] : p.sessions_by_lang) {
      out << CsvEscape(p.editor_id) << ',' << p.n_langs << ','
          << CsvEscape(p.primary_lang) << ',' << CsvEscape(lang) << ',' << count << ',' << GroupLabelName(Classify(p, lang))
          << '\n';
    }
  }
}

std::vector<ProfileRow> ReadProfilesCsv(std::istream &in) {
  std::vector<ProfileRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || Trim(line).empty()) continue;
    const auto f = ParseCsvLine(line);
    if (f.size() != 6) {
      throw Error(ErrorCode::kMalformedInput,
                  "profiles line " + std::to_string(line_no));
    }
    ProfileRow row;
    row.editor_id = f[0];
    row.n_langs = std::stoi(f[1]);
    row.primary_lang = f[2];
    row.lang = f[3];
    row.session_count = std::stoll(f[4]);
    if (f[5] == "primary") {
      row.group = GroupLabel::kPrimary;
    } else if (f[5] == "non_primary") {
      row.group = GroupLabel::kNonPrimary;
    } else {
      row.group = GroupLabel::kNotPresent;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace editlens
