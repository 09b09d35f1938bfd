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

#include "editlens/wikitext.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "editlens/error.h"
#include "editlens/text.h"
#include "json.hpp"

namespace editlens {
namespace {

bool StartsWith(std::string_view s, std::size_t pos, std::string_view prefix) {
  return s.substr(pos, prefix.size()) == prefix;
}

bool StartsWithNoCase(std::string_view s, std::size_t pos,
                      std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k) {
    char c = s[pos + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != prefix[k]) return false;
  }
  return true;
}

std::size_t FindNoCase(std::string_view s, std::string_view needle,
                       std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (StartsWithNoCase(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

// Index just past the delimiter closing the construct opened at `pos`, or
// npos when unbalanced.
std::size_t MatchNested(std::string_view s, std::size_t pos,
                        std::string_view open, std::string_view close) {
  int depth = 0;
  std::size_t i = pos;
  while (i < s.size()) {
    if (StartsWith(s, i, open)) {
      ++depth;
      i += open.size();
    } else if (StartsWith(s, i, close)) {
      --depth;
      i += close.size();
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

bool IsUrlStart(std::string_view s, std::size_t pos) {
  return StartsWithNoCase(s, pos, "http://") ||
         StartsWithNoCase(s, pos, "https://") ||
         StartsWithNoCase(s, pos, "ftp://") || StartsWith(s, pos, "//");
}

bool IsAsciiAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

bool IsHiddenNamespace(std::string_view target) {
  static const char *const kHidden[] = {
      "category", "file",  "image",   "media",    "kategorie", "datei",
      "bild",     "categoría", "categoria", "archivo", "imagen",
  };
  const auto colon = target.find(':');
  if (colon == std::string_view::npos) return false;
  const std::string ns = FoldCase(Trim(target.substr(0, colon)));
  for (const char *h : kHidden) {
    if (ns == h) return true;
  }
  return false;
}

// Position of the first '|' outside nested [[ ]] and {{ }}.
std::size_t TopLevelPipe(std::string_view inner) {
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (StartsWith(inner, i, "[[") || StartsWith(inner, i, "{{")) {
      ++depth;
      ++i;
    } else if (StartsWith(inner, i, "]]") || StartsWith(inner, i, "}}")) {
      --depth;
      ++i;
    } else if (inner[i] == '|' && depth <= 0) {
      return i;
    }
  }
  return std::string_view::npos;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
        c == '\v') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::string StripPass(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];

    if (c == '<' && StartsWith(s, i, "<!--")) {
      const auto end = s.find("-->", i + 4);
      if (end != std::string_view::npos) {
        i = end + 3;
        continue;
      }
    }

    if (c == '<' && StartsWithNoCase(s, i, "<ref") && i + 4 < s.size() &&
        (s[i + 4] == '>' || s[i + 4] == ' ' || s[i + 4] == '/' ||
         s[i + 4] == '\t')) {
      const auto gt = s.find('>', i + 4);
      if (gt != std::string_view::npos) {
        if (s[gt - 1] == '/') {
          i = gt + 1;
          continue;
        }
        const auto close = FindNoCase(s, "</ref", gt + 1);
        if (close != std::string_view::npos) {
          const auto close_gt = s.find('>', close);
          if (close_gt != std::string_view::npos) {
            i = close_gt + 1;
            continue;
          }
        }
      }
    }

    if (c == '{' && StartsWith(s, i, "{{")) {
      const auto end = MatchNested(s, i, "{{", "}}");
      if (end != std::string_view::npos) {
        i = end;
        continue;
      }
    }

    if (c == '[' && StartsWith(s, i, "[[")) {
      const auto end = MatchNested(s, i, "[[", "]]");
      if (end != std::string_view::npos) {
        const std::string_view inner = s.substr(i + 2, end - i - 4);
        const auto pipe = TopLevelPipe(inner);
        std::string_view target =
            pipe == std::string_view::npos ? inner : inner.substr(0, pipe);
        std::string_view label =
            pipe == std::string_view::npos ? inner : inner.substr(pipe + 1);
        const std::string_view trimmed = Trim(target);
        if (!trimmed.empty() && trimmed.front() == ':') {
          if (pipe == std::string_view::npos) label = trimmed.substr(1);
        } else if (IsHiddenNamespace(trimmed)) {
          i = end;
          continue;
        }
        if (Trim(label).empty()) label = target;
        out += StripPass(label);
        i = end;
        continue;
      }
    }

    if (c == '[' && IsUrlStart(s, i + 1)) {
      const auto close = s.find(']', i + 1);
      const auto newline = s.find('\n', i + 1);
      if (close != std::string_view::npos && close < newline) {
        const std::string_view content = s.substr(i + 1, close - i - 1);
        const auto sp = content.find(' ');
        if (sp != std::string_view::npos) {
          out += StripPass(content.substr(sp + 1));
        }
        i = close + 1;
        continue;
      }
    }

    if ((c == 'h' || c == 'H') &&
        (StartsWithNoCase(s, i, "http://") ||
         StartsWithNoCase(s, i, "https://")) &&
        (i == 0 || !IsAsciiAlnum(s[i - 1]))) {
      while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\n') ++i;
      continue;
    }

    if (c == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
      std::size_t run = 0;
      while (i + run < s.size() && s[i + run] == '\'') ++run;
      // 2 = italic, 3 = bold, 5 = both; 4 renders one apostrophe + bold and
      // longer runs leave the surplus as apostrophes.
      if (run == 4) {
        out.push_back('\'');
      } else if (run > 5) {
        out.append(run - 5, '\'');
      }
      i += run;
      continue;
    }

    out.push_back(c);
    ++i;
  }
  return CollapseWhitespace(out);
}

// Suffix LCS table: dp[i][j] = LCS(a[i..], b[j..]).
template <typename T>
std::vector<std::vector<uint32_t>> SuffixLcs(std::span<const T> a,
                                             std::span<const T> b) {
  std::vector<std::vector<uint32_t>> dp(a.size() + 1,
                                        std::vector<uint32_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      dp[i][j] = a[i] == b[j] ? dp[i + 1][j + 1] + 1
                              : std::max(dp[i + 1][j], dp[i][j + 1]);
    }
  }
  return dp;
}

enum class Op { kMatch, kDelete, kInsert };

// Edit script over a and b; ties prefer deleting from a first.
template <typename T>
std::vector<Op> EditScript(std::span<const T> a, std::span<const T> b) {
  // Common prefix and suffix never change the LCS length; trimming them
  // keeps the quadratic table small for long documents.
  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
    ++prefix;
  }
  std::size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  const auto mid_a = a.subspan(prefix, a.size() - prefix - suffix);
  const auto mid_b = b.subspan(prefix, b.size() - prefix - suffix);
  const auto dp = SuffixLcs(mid_a, mid_b);

  std::vector<Op> ops(prefix, Op::kMatch);
  std::size_t i = 0, j = 0;
  while (i < mid_a.size() || j < mid_b.size()) {
    if (i < mid_a.size() && j < mid_b.size() && mid_a[i] == mid_b[j]) {
      ops.push_back(Op::kMatch);
      ++i, ++j;
    } else if (j == mid_b.size() ||
               (i < mid_a.size() && dp[i + 1][j] >= dp[i][j + 1])) {
      ops.push_back(Op::kDelete);
      ++i;
    } else {
      ops.push_back(Op::kInsert);
      ++j;
    }
  }
  ops.insert(ops.end(), suffix, Op::kMatch);
  return ops;
}

}  // namespace

std::string StripMarkup(std::string_view wikitext) {
  std::string current = StripPass(wikitext);
  // Each pass only removes characters or normalizes whitespace, so this
  // terminates quickly; the bound is a backstop.
  for (int pass = 0; pass < 64; ++pass) {
    std::string next = StripPass(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

TokenDiff DiffTokens(std::span<const std::string> pre,
                     std::span<const std::string> post) {
  TokenDiff diff;
  std::size_t i = 0, j = 0;
  for (Op op : EditScript(pre, post)) {
    switch (op) {
      case Op::kMatch:
        ++diff.lcs_length;
        ++i, ++j;
        break;
      case Op::kDelete:
        diff.deleted.push_back(pre[i++]);
        break;
      case Op::kInsert:
        diff.inserted.push_back(post[j++]);
        break;
    }
  }
  return diff;
}

TokenDiff DiffText(std::string_view pre_text, std::string_view post_text) {
  const auto pre = Tokenize(pre_text);
  const auto post = Tokenize(post_text);
  return DiffTokens(pre, post);
}

std::vector<ParagraphPair> PairParagraphs(
    std::span<const std::string> pre_doc, std::span<const std::string> post_doc) {
  std::vector<ParagraphPair> pairs;
  std::vector<int> removed, added;
  auto flush = [&]() {
    const std::size_t n = std::max(removed.size(), added.size());
    for (std::size_t k = 0; k < n; ++k) {
      ParagraphPair p;
      if (k < removed.size()) {
        p.pre_line = removed[k];
        p.pre_text = StripMarkup(pre_doc[removed[k]]);
      }
      if (k < added.size()) {
        p.post_line = added[k];
        p.post_text = StripMarkup(post_doc[added[k]]);
      }
      TokenDiff d = DiffText(p.pre_text, p.post_text);
      p.inserted_tokens = std::move(d.inserted);
      p.deleted_tokens = std::move(d.deleted);
      p.visible = p.pre_text != p.post_text;
      pairs.push_back(std::move(p));
    }
    removed.clear();
    added.clear();
  };

  int i = 0, j = 0;
  for (Op op : EditScript(pre_doc, post_doc)) {
    switch (op) {
      case Op::kMatch:
        flush();
        ++i, ++j;
        break;
      case Op::kDelete:
        removed.push_back(i++);
        break;
      case Op::kInsert:
        added.push_back(j++);
        break;
    }
  }
  flush();
  return pairs;
}

SessionDiff Visibility(std::vector<ParagraphPair> pairs) {
  SessionDiff diff;
  diff.degenerate = pairs.empty();
  diff.all_non_visible = std::none_of(
      pairs.begin(), pairs.end(),
      [](const ParagraphPair &p) { return p.pre_text != p.post_text; });
  diff.pairs = std::move(pairs);
  return diff;
}

std::vector<ManifestEntry> ReadManifest(std::istream &in) {
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line.front() == '#') continue;
    const auto f = SplitString(line, '\t');
    if (f.size() != 6) {
      throw Error(ErrorCode::kMalformedInput,
                  "manifest line " + std::to_string(line_no) +
                      ": expected 6 tab-separated fields");
    }
    ManifestEntry e;
    e.editor_id = f[0];
    e.lang = f[1];
    e.article_id = f[2];
    try {
      e.start_ts = std::stoll(f[3]);
    } catch (const std::exception &) {
      throw Error(ErrorCode::kMalformedInput,
                  "manifest line " + std::to_string(line_no) + ": bad start_ts");
    }
    e.pre_rev = f[4] == "-" ? "" : f[4];
    e.post_rev = f[5];
    entries.push_back(std::move(e));
  }
  return entries;
}

void WriteManifest(std::span<const ManifestEntry> entries, std::ostream &out) {
  for (const ManifestEntry &e : entries) {
    out << e.editor_id << '\t' << e.lang << '\t' << e.article_id << '\t'
        << e.start_ts << '\t' << (e.pre_rev.empty() ? "-" : e.pre_rev) << '\t'
        << e.post_rev << '\n';
  }
}

std::filesystem::path RevisionPath(const std::filesystem::path &root,
                                   std::string_view lang,
                                   std::string_view rev) {
  return root / std::string(lang) / (std::string(rev) + ".txt");
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines = SplitString(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (std::string &l : lines) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
  }
  return lines;
}

std::vector<std::string> ReadRevisionLines(const std::filesystem::path &root,
                                           std::string_view lang,
                                           std::string_view rev) {
  const auto path = RevisionPath(root, lang, rev);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "missing revision " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return SplitLines(buf.str());
}

std::vector<SessionDiffRecord> DiffSessions(
    std::span<const ArticleEditSession> sessions,
    const std::filesystem::path &revisions_dir) {
  const auto manifest_path = revisions_dir / "manifest.tsv";
  std::ifstream manifest_in(manifest_path);
  if (!manifest_in) {
    throw Error(ErrorCode::kIo, "missing manifest " + manifest_path.string());
  }
  using Key = std::tuple<std::string, std::string, std::string, int64_t>;
  std::map<Key, ManifestEntry> manifest;
  for (ManifestEntry &e : ReadManifest(manifest_in)) {
    Key key{e.editor_id, e.lang, e.article_id, e.start_ts};
    manifest.emplace(std::move(key), std::move(e));
  }

  std::vector<SessionDiffRecord> out;
  out.reserve(sessions.size());
  for (const ArticleEditSession &s : sessions) {
    auto it = manifest.find({s.editor_id, s.lang, s.article_id, s.start_ts});
    if (it == manifest.end()) {
      throw Error(ErrorCode::kMalformedInput,
                  "no manifest entry for session " + s.editor_id + "/" +
                      s.lang + "/" + s.article_id + "@" +
                      std::to_string(s.start_ts));
    }
    const ManifestEntry &e = it->second;
    const std::vector<std::string> pre =
        e.pre_rev.empty() ? std::vector<std::string>{}
                          : ReadRevisionLines(revisions_dir, s.lang, e.pre_rev);
    const std::vector<std::string> post =
        ReadRevisionLines(revisions_dir, s.lang, e.post_rev);
    SessionDiffRecord rec;
    rec.editor_id = s.editor_id;
    rec.article_id = s.article_id;
    rec.lang = s.lang;
    rec.start_ts = s.start_ts;
    rec.end_ts = s.end_ts;
    rec.n_revisions = static_cast<int>(s.revisions.size());
    rec.pre_rev = e.pre_rev;
    rec.post_rev = e.post_rev;
    rec.diff = Visibility(PairParagraphs(pre, post));
    out.push_back(std::move(rec));
  }
  return out;
}

void WriteSessionDiffs(std::span<const SessionDiffRecord> diffs,
                       std::ostream &out) {
  for (const SessionDiffRecord &d : diffs) {
    nlohmann::ordered_json obj;
    obj["editor"] = d.editor_id;
    obj["article"] = d.article_id;
    obj["lang"] = d.lang;
    obj["start"] = d.start_ts;
    obj["end"] = d.end_ts;
    obj["n_revisions"] = d.n_revisions;
    obj["pre_rev"] = d.pre_rev;
    obj["post_rev"] = d.post_rev;
    obj["all_non_visible"] = d.diff.all_non_visible;
    auto pairs = nlohmann::ordered_json::array();
    for (const ParagraphPair &p : d.diff.pairs) {
      nlohmann::ordered_json jp;
      jp["pre_line"] = p.pre_line;
      jp["post_line"] = p.post_line;
      jp["pre"] = p.pre_text;
      jp["post"] = p.post_text;
      jp["ins"] = p.inserted_tokens;
      jp["del"] = p.deleted_tokens;
      jp["visible"] = p.visible;
      pairs.push_back(std::move(jp));
    }
    obj["pairs"] = std::move(pairs);
    out << obj.dump() << '\n';
  }
}

std::vector<SessionDiffRecord> ReadSessionDiffs(std::istream &in) {
  std::vector<SessionDiffRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      SessionDiffRecord d;
      d.editor_id = obj.at("editor").get<std::string>();
      d.article_id = obj.at("article").get<std::string>();
      d.lang = obj.at("lang").get<std::string>();
      d.start_ts = obj.at("start").get<int64_t>();
      d.end_ts = obj.at("end").get<int64_t>();
      d.n_revisions = obj.at("n_revisions").get<int>();
      d.pre_rev = obj.at("pre_rev").get<std::string>();
      d.post_rev = obj.at("post_rev").get<std::string>();
      std::vector<ParagraphPair> pairs;
      for (const auto &jp : obj.at("pairs")) {
        ParagraphPair p;
        p.pre_line = jp.at("pre_line").get<int>();
        p.post_line = jp.at("post_line").get<int>();
        p.pre_text = jp.at("pre").get<std::string>();
        p.post_text = jp.at("post").get<std::string>();
        p.inserted_tokens = jp.at("ins").get<std::vector<std::string>>();
        p.deleted_tokens = jp.at("del").get<std::vector<std::string>>();
        p.visible = jp.at("visible").get<bool>();
        pairs.push_back(std::move(p));
      }
      d.diff = Visibility(std::move(pairs));
      out.push_back(std::move(d));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kMalformedInput,
                  "pairs line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace editlens
