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

#include <algorithm>
#include <string>

#include "editlens/metrics.h"
#include "editlens/text.h"

namespace editlens {
namespace {

struct LexEntry {
  std::string_view word;
  std::string_view tag;
};

// Closed-class words. Tags follow a coarse universal set.
constexpr LexEntry kEnglish[] = {
    {"the", "DET"}, {"a", "DET"}, {"an", "DET"}, {"this", "DET"},
    {"that", "DET"}, {"these", "DET"}, {"those", "DET"},
    {"of", "ADP"}, {"in", "ADP"}, {"on", "ADP"}, {"at", "ADP"},
    {"by", "ADP"}, {"for", "ADP"}, {"with", "ADP"}, {"from", "ADP"},
    {"to", "PRT"}, {"and", "CONJ"}, {"or", "CONJ"}, {"but", "CONJ"},
    {"is", "VERB"}, {"are", "VERB"}, {"was", "VERB"}, {"were", "VERB"},
    {"be", "VERB"}, {"been", "VERB"}, {"has", "VERB"}, {"have", "VERB"},
    {"had", "VERB"}, {"he", "PRON"}, {"she", "PRON"}, {"it", "PRON"},
    {"they", "PRON"}, {"we", "PRON"}, {"i", "PRON"}, {"you", "PRON"},
    {"his", "PRON"}, {"her", "PRON"}, {"its", "PRON"}, {"their", "PRON"},
    {"not", "ADV"}, {"also", "ADV"}, {"very", "ADV"},
};

constexpr LexEntry kGerman[] = {
    {"der", "DET"}, {"die", "DET"}, {"das", "DET"}, {"des", "DET"},
    {"dem", "DET"}, {"den", "DET"}, {"ein", "DET"}, {"eine", "DET"},
    {"einer", "DET"}, {"eines", "DET"}, {"einem", "DET"}, {"einen", "DET"},
    {"und", "CONJ"}, {"oder", "CONJ"}, {"aber", "CONJ"},
    {"in", "ADP"}, {"im", "ADP"}, {"mit", "ADP"}, {"von", "ADP"},
    {"zu", "ADP"}, {"auf", "ADP"}, {"für", "ADP"}, {"aus", "ADP"},
    {"ist", "VERB"}, {"sind", "VERB"}, {"war", "VERB"}, {"wurde", "VERB"},
    {"hat", "VERB"}, {"haben", "VERB"}, {"er", "PRON"}, {"sie", "PRON"},
    {"es", "PRON"}, {"nicht", "ADV"}, {"auch", "ADV"},
};

constexpr LexEntry kSpanish[] = {
    {"el", "DET"}, {"la", "DET"}, {"los", "DET"}, {"las", "DET"},
    {"un", "DET"}, {"una", "DET"}, {"unos", "DET"}, {"unas", "DET"},
    {"y", "CONJ"}, {"o", "CONJ"}, {"pero", "CONJ"},
    {"de", "ADP"}, {"en", "ADP"}, {"con", "ADP"}, {"por", "ADP"},
    {"para", "ADP"}, {"a", "ADP"}, {"del", "ADP"}, {"al", "ADP"},
    {"es", "VERB"}, {"son", "VERB"}, {"fue", "VERB"}, {"era", "VERB"},
    {"ha", "VERB"}, {"se", "PRON"}, {"él", "PRON"}, {"ella", "PRON"},
    {"no", "ADV"}, {"también", "ADV"}, {"muy", "ADV"},
};

std::span<const LexEntry> LexiconFor(std::string_view lang) {
  if (lang == "en") return kEnglish;
  if (lang == "de") return kGerman;
  if (lang == "es") return kSpanish;
  return {};
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() + 1 &&
         s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string LexiconTagger::TagToken(std::string_view lang,
                                    std::string_view token) const {
  if (token.empty()) return "X";
  if (std::all_of(token.begin(), token.end(),
                  [](char c) { return c >= '0' && c <= '9'; })) {
    return "NUM";
  }
  const std::string folded = FoldCase(token);
  for (const LexEntry &e : LexiconFor(lang)) {
    if (e.word == folded) return std::string(e.tag);
  }
  if (lang == "en") {
    if (EndsWith(folded, "ly")) return "ADV";
    if (EndsWith(folded, "ing") || EndsWith(folded, "ed")) return "VERB";
    if (EndsWith(folded, "ous") || EndsWith(folded, "ful") ||
        EndsWith(folded, "ive") || EndsWith(folded, "able")) {
      return "ADJ";
    }
  } else if (lang == "de") {
    if (EndsWith(folded, "en") && token.front() >= 'a' && token.front() <= 'z') {
      return "VERB";
    }
    if (EndsWith(folded, "lich") || EndsWith(folded, "ig") ||
        EndsWith(folded, "isch")) {
      return "ADJ";
    }
  } else if (lang == "es") {
    if (EndsWith(folded, "mente")) return "ADV";
    if (EndsWith(folded, "ar") || EndsWith(folded, "er") ||
        EndsWith(folded, "ir") || EndsWith(folded, "ado") ||
        EndsWith(folded, "ido")) {
      return "VERB";
    }
    if (EndsWith(folded, "oso") || EndsWith(folded, "osa") ||
        EndsWith(folded, "ble")) {
      return "ADJ";
    }
  }
  if (token.front() >= 'A' && token.front() <= 'Z') return "PROPN";
  return "NOUN";
}

TaggedTokens LexiconTagger::Tag(std::string_view lang,
                                std::span<const std::string> tokens) const {
  std::vector<std::string> toks(tokens.begin(), tokens.end());
  std::vector<std::string> tags;
  tags.reserve(toks.size());
  for (const std::string &t : toks) tags.push_back(TagToken(lang, t));
  return TaggedTokens(std::move(toks), std::move(tags));
}

}  // namespace editlens
