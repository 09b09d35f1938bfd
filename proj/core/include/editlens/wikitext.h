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

#ifndef EDITLENS_WIKITEXT_H_
#define EDITLENS_WIKITEXT_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editlens/sessions.h"

namespace editlens {

// Reduces one line of wiki markup to the text a reader sees.
//
// Recognized markup:
//   [[target]], [[target|label]]   -> target / label
//   [[Category:..]], [[File:..]]   -> removed (also Image, Media and the
//                                     German/Spanish namespace names)
//   [http://url label], [http://url] -> label / removed
//   bare http(s):// URLs           -> removed
//   '' ''' '''''                   -> removed
//   {{template}} (nested)          -> removed
//   <ref>..</ref>, <ref/>          -> removed
//   <!-- comment -->               -> removed
// Unmatched delimiters are kept as literal text. Whitespace is collapsed and
// trimmed. The result is a fixed point: StripMarkup(StripMarkup(x)) ==
// StripMarkup(x).
std::string StripMarkup(std::string_view wikitext);

struct TokenDiff {
  std::vector<std::string> inserted;  // post-only tokens, in order
  std::vector<std::string> deleted;   // pre-only tokens, in order
  std::size_t lcs_length = 0;
};

TokenDiff DiffTokens(std::span<const std::string> pre,
                     std::span<const std::string> post);
TokenDiff DiffText(std::string_view pre_text, std::string_view post_text);

// One changed markup line. A deletion has post_line == -1 and empty
// post_text; an insertion has pre_line == -1.
struct ParagraphPair {
  int pre_line = -1;
  int post_line = -1;
  std::string pre_text;
  std::string post_text;
  std::vector<std::string> inserted_tokens;
  std::vector<std::string> deleted_tokens;
  bool visible = false;
};

// Aligns two documents by line-level LCS and returns the changed lines.
// Within a run of unmatched lines the i-th removed line pairs with the i-th
// added line; the surplus pairs with empty text.
std::vector<ParagraphPair> PairParagraphs(std::span<const std::string> pre_doc,
                                          std::span<const std::string> post_doc);

struct SessionDiff {
  std::vector<ParagraphPair> pairs;
  bool all_non_visible = true;
  // No pairs at all; all_non_visible is then vacuously true.
  bool degenerate = true;
};

SessionDiff Visibility(std::vector<ParagraphPair> pairs);

// revisions/manifest.tsv:
//   editor \t lang \t article \t start_ts \t pre_rev \t post_rev
// pre_rev "-" means the session created the article.
struct ManifestEntry {
  std::string editor_id;
  std::string lang;
  std::string article_id;
  int64_t start_ts = 0;
  std::string pre_rev;  // empty when the article did not exist
  std::string post_rev;
};

std::vector<ManifestEntry> ReadManifest(std::istream &in);
void WriteManifest(std::span<const ManifestEntry> entries, std::ostream &out);

std::filesystem::path RevisionPath(const std::filesystem::path &root,
                                   std::string_view lang,
                                   std::string_view rev);
std::vector<std::string> SplitLines(std::string_view text);
// Throws Error(kIo) naming the missing revision.
std::vector<std::string> ReadRevisionLines(const std::filesystem::path &root,
                                           std::string_view lang,
                                           std::string_view rev);

struct SessionDiffRecord {
  std::string editor_id;
  std::string article_id;
  std::string lang;
  int64_t start_ts = 0;
  int64_t end_ts = 0;
  int n_revisions = 0;
  std::string pre_rev;
  std::string post_rev;
  SessionDiff diff;
};

// Diffs each session's pre revision against its post revision using the
// manifest in `revisions_dir`. A session without a manifest entry, or a
// missing revision file, is an error naming the session or file.
std::vector<SessionDiffRecord> DiffSessions(
    std::span<const ArticleEditSession> sessions,
    const std::filesystem::path &revisions_dir);

// pairs.bin: JSON lines, one SessionDiffRecord per line.
void WriteSessionDiffs(std::span<const SessionDiffRecord> diffs,
                       std::ostream &out);
std::vector<SessionDiffRecord> ReadSessionDiffs(std::istream &in);

}  // namespace editlens

#endif  // EDITLENS_WIKITEXT_H_
