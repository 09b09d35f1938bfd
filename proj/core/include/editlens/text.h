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

#ifndef EDITLENS_TEXT_H_
#define EDITLENS_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace editlens {

// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD.
std::vector<char32_t> DecodeUtf8(std::string_view text);
void AppendUtf8(char32_t cp, std::string *out);
bool IsValidUtf8(std::string_view text);

// True for code points that can be part of a word token: letters, digits
// and marks. Punctuation, symbols and whitespace are separators.
bool IsWordCodePoint(char32_t cp);

// Word segmentation used for diffs, entropy and article counting. A token is
// a maximal run of word code points; an apostrophe or hyphen joins two runs
// when it is flanked by word code points on both sides ("well-known").
// Punctuation never forms a token.
std::vector<std::string> Tokenize(std::string_view text);

// Lower-cases ASCII and the Latin-1 / Latin Extended-A letters used by the
// supported editions.
std::string FoldCase(std::string_view token);

// Number of code points.
std::size_t CountChars(std::string_view text);

// Sentences end at '.', '!' or '?' followed by whitespace or end of text. A
// trailing fragment with at least one word counts as a sentence.
std::size_t CountSentences(std::string_view text);

std::string_view Trim(std::string_view s);
std::vector<std::string> SplitString(std::string_view s, char sep);

// RFC 4180 quoting: fields containing ',', '"' or a newline are quoted.
std::string CsvEscape(std::string_view field);
// Splits one CSV line, undoing CsvEscape.
std::vector<std::string> ParseCsvLine(std::string_view line);

// Shortest round-trip-stable decimal rendering used for every numeric value
// written to CSV/JSON outputs, so reruns are byte-identical.
std::string FormatDouble(double value);

}  // namespace editlens

#endif  // EDITLENS_TEXT_H_
