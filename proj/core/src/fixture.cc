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

#include "editlens/fixture.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "editlens/error.h"
#include "editlens/ingest.h"
#include "editlens/metrics.h"
#include "editlens/random.h"
#include "editlens/text.h"
#include "editlens/wikitext.h"
#include "json.hpp"

namespace editlens {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr int kPoolLines = 8;
constexpr int kMinDiversity = 3;
constexpr int kMaxDiversity = 30;
constexpr double kPerturbRate = 0.05;
constexpr const char *kTags[] = {"NOUN", "VERB", "ADJ",  "ADV",  "PRON", "ADP",
                                 "CCONJ", "NUM", "PROPN", "AUX", "PART", "INTJ"};

struct Word {
  std::string text;
  std::string tag;
};

struct Vocabulary {
  std::vector<std::vector<Word>> topic;  // per topic
  std::vector<Word> general;
};

struct Line {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  std::vector<bool> linked;
  int diversity = 0;
  std::string raw;  // non-empty: fixed markup line, never edited

  std::string Render() const {
    if (!raw.empty()) return raw;
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out += ' ';
      if (linked[i]) {
        out += "[[" + tokens[i] + "]]";
      } else {
        out += tokens[i];
      }
    }
    return out + ".";
  }
};

struct Article {
  std::string id;
  std::string title;
  int topic = 0;
  std::vector<Line> lines;
  std::string rev;
};

struct EditorPlan {
  std::string id;
  std::string group;  // primary, non_primary, monolingual, outlier
  std::string primary_lang;
  std::vector<std::pair<std::string, int>> sessions_by_lang;
  double z = 0;
  double target = 0;
  double article_rate = 0;
};

struct PlannedSession {
  std::size_t editor = 0;
  std::string lang;
  std::size_t article = 0;
  bool visible = true;
  std::vector<int64_t> times;
  int line = -1;
};

struct Event {
  int64_t ts;
  std::size_t session;
  std::size_t step;
  bool operator<(const Event &o) const {
    return std::tie(ts, session, step) < std::tie(o.ts, o.session, o.step);
  }
};

int UniformInt(Rng &rng, int lo, int hi) {
  return lo + static_cast<int>(UniformIndex(rng, static_cast<uint64_t>(hi - lo + 1)));
}

template <typename T>
void Shuffle(std::vector<T> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[UniformIndex(rng, i)]);
  }
}

std::string PseudoWord(Rng &rng) {
  static const char kConsonants[] = "bcdfgklmnprstvz";
  static const char kVowels[] = "aeiou";
  const int syllables = UniformInt(rng, 2, 4);
  std::string w;
  for (int s = 0; s < syllables; ++s) {
    w += kConsonants[UniformIndex(rng, sizeof(kConsonants) - 1)];
    w += kVowels[UniformIndex(rng, sizeof(kVowels) - 1)];
  }
  if (UniformIndex(rng, 2) == 0) w += kConsonants[UniformIndex(rng, sizeof(kConsonants) - 1)];
  return w;
}

Vocabulary MakeVocabulary(const SyntheticSpec &spec, const std::string &lang) {
  Rng rng(SubSeed(spec.seed, "fixture/vocab/" + lang));
  std::set<std::string> used;
  for (const std::string &l : {std::string("en"), std::string("de"), std::string("es")}) {
    for (std::string_view a : ArticleWords(l)) used.emplace(a);
  }
  auto fresh = [&]() {
    std::string w;
    do {
      w = PseudoWord(rng);
    } while (!used.insert(w).second);
    return Word{w, kTags[UniformIndex(rng, std::size(kTags))]};
  };
  Vocabulary v;
  v.topic.resize(static_cast<std::size_t>(spec.n_topics));
  for (auto &t : v.topic) {
    for (int i = 0; i < spec.topic_words; ++i) t.push_back(fresh());
  }
  for (int i = 0; i < spec.general_words; ++i) v.general.push_back(fresh());
  return v;
}

int ClampDiversity(double m) {
  return std::clamp(static_cast<int>(std::lround(m)), kMinDiversity, kMaxDiversity);
}

// A paragraph that cycles through a phrase of `m` distinct words with light
// perturbation, so n-gram diversity of every order tracks m.
Line MakeParagraph(Rng &rng, const std::vector<const Word *> &candidates, int m,
                   int length, const std::string &lang, double article_rate) {
  std::vector<const Word *> pool = candidates;
  m = std::min<int>(m, static_cast<int>(pool.size()));
  for (int i = 0; i < m; ++i) {
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[i + UniformIndex(rng, pool.size() - static_cast<std::size_t>(i))]);
  }
  std::vector<const Word *> seq;
  for (int i = 0; i < length; ++i) {
    const std::size_t slot = UniformDouble(rng) < kPerturbRate
                                 ? UniformIndex(rng, static_cast<uint64_t>(m))
                                 : static_cast<std::size_t>(i % m);
    seq.push_back(pool[slot]);
  }
  const auto articles = ArticleWords(lang);
  Line line;
  line.diversity = m;
  for (const Word *w : seq) {
    if (!articles.empty() && UniformDouble(rng) < article_rate) {
      line.tokens.emplace_back(articles[UniformIndex(rng, articles.size())]);
      line.tags.emplace_back("DET");
    }
    line.tokens.push_back(w->text);
    line.tags.push_back(w->tag);
  }
  line.linked.assign(line.tokens.size(), false);
  return line;
}

std::vector<const Word *> Candidates(const Vocabulary &v, int topic) {
  std::vector<const Word *> out;
  for (const Word &w : v.topic[static_cast<std::size_t>(topic)]) out.push_back(&w);
  for (const Word &w : v.general) out.push_back(&w);
  return out;
}

std::string Id(char prefix, int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%03d", prefix, i + 1);
  return buf;
}

std::ofstream OpenOut(const fs::path &path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

std::vector<std::string> ParseLangList(const std::string &s) {
  std::vector<std::string> out;
  for (const std::string &l : SplitString(s, ',')) {
    if (!Trim(l).empty()) out.emplace_back(Trim(l));
  }
  return out;
}

}  // namespace

const std::set<std::string> &SyntheticSpec::Keys() {
  static const std::set<std::string> keys = {
      "seed",          "target-lang",      "other-langs",
      "n-primary",     "n-nonprimary",     "bilingual-share",
      "entropy-shift", "article-rate",     "article-shift",
      "non-visible-rate", "n-topics",      "articles-per-topic",
      "topic-words",   "general-words",    "paragraph-tokens",
      "n-monolingual", "n-outliers",       "n-bot-records",
      "n-talk-records", "n-malformed",     "n-duplicates",
      "start-ts",      "lda-k",            "lda-iters",
  };
  return keys;
}

SyntheticSpec SyntheticSpec::FromConfig(const KeyValueConfig &c) {
  c.RejectUnknown(Keys());
  SyntheticSpec s;
  if (!c.Has("seed")) throw Error(ErrorCode::kConfig, "key 'seed' is required");
  const int64_t seed = c.GetInt("seed");
  if (seed < 0) throw Error(ErrorCode::kConfig, "key 'seed' must be >= 0");
  s.seed = static_cast<uint64_t>(seed);
  s.target_lang = c.GetString("target-lang", s.target_lang);
  if (c.Has("other-langs")) s.other_langs = ParseLangList(c.GetString("other-langs"));
  auto get_int = [&](const char *key, int def) {
    return static_cast<int>(c.GetInt(key, def));
  };
  s.n_primary = get_int("n-primary", s.n_primary);
  s.n_nonprimary = get_int("n-nonprimary", s.n_nonprimary);
  s.bilingual_share = c.GetDouble("bilingual-share", s.bilingual_share);
  s.entropy_shift = c.GetDouble("entropy-shift", s.entropy_shift);
  s.article_rate = c.GetDouble("article-rate", s.article_rate);
  s.article_shift = c.GetDouble("article-shift", s.article_shift);
  s.non_visible_rate = c.GetDouble("non-visible-rate", s.non_visible_rate);
  s.n_topics = get_int("n-topics", s.n_topics);
  s.articles_per_topic = get_int("articles-per-topic", s.articles_per_topic);
  s.topic_words = get_int("topic-words", s.topic_words);
  s.general_words = get_int("general-words", s.general_words);
  s.paragraph_tokens = get_int("paragraph-tokens", s.paragraph_tokens);
  s.n_monolingual = get_int("n-monolingual", s.n_monolingual);
  s.n_outliers = get_int("n-outliers", s.n_outliers);
  s.n_bot_records = get_int("n-bot-records", s.n_bot_records);
  s.n_talk_records = get_int("n-talk-records", s.n_talk_records);
  s.n_malformed = get_int("n-malformed", s.n_malformed);
  s.n_duplicates = get_int("n-duplicates", s.n_duplicates);
  s.start_ts = c.GetInt("start-ts", s.start_ts);
  s.lda_k = get_int("lda-k", s.lda_k);
  s.lda_iterations = get_int("lda-iters", s.lda_iterations);
  try {
    s.Validate();
  } catch (const Error &e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  return s;
}

void SyntheticSpec::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kInvalidArgument, "synthetic spec: " + what);
  };
  if (n_primary < 2 || n_nonprimary < 2) fail("each group needs >= 2 editors");
  if (target_lang.empty()) fail("target-lang is empty");
  if (other_langs.empty()) fail("other-langs is empty");
  if (std::find(other_langs.begin(), other_langs.end(), target_lang) !=
      other_langs.end()) {
    fail("other-langs must not contain target-lang");
  }
  if (!std::isfinite(entropy_shift) || !std::isfinite(article_shift)) {
    fail("effect sizes must be finite");
  }
  if (!(bilingual_share >= 0 && bilingual_share <= 1)) fail("bilingual-share must be in [0, 1]");
  if (bilingual_share < 1 && other_langs.size() < 2) {
    fail("editors with 3+ editions need >= 2 other languages");
  }
  for (double r : {article_rate, article_rate + article_shift, non_visible_rate}) {
    if (!(r >= 0 && r <= 1)) fail("rates must be in [0, 1]");
  }
  if (n_topics < 1 || articles_per_topic < 1) fail("topic plant must be non-empty");
  if (topic_words < 1 || general_words < kMaxDiversity) {
    fail("vocabulary too small for the diversity range");
  }
  if (paragraph_tokens < kMaxDiversity) fail("paragraph-tokens must be >= 30");
  if (std::min({n_monolingual, n_outliers, n_bot_records, n_talk_records,
                n_malformed, n_duplicates}) < 0) {
    fail("noise counts must be >= 0");
  }
  if (lda_k < 2 || lda_iterations < 1) fail("lda-k must be >= 2 and lda-iters >= 1");
}

FixtureSummary GenerateFixture(const SyntheticSpec &spec, const fs::path &out_dir) {
  spec.Validate();
  std::vector<std::string> langs = {spec.target_lang};
  langs.insert(langs.end(), spec.other_langs.begin(), spec.other_langs.end());
  const std::string &target = spec.target_lang;
  const std::vector<std::string> &others = spec.other_langs;

  // Editors.
  Rng erng(SubSeed(spec.seed, "fixture/editors"));
  std::vector<EditorPlan> editors;
  const int n_multi = spec.n_primary + spec.n_nonprimary;
  const int n_bilingual =
      static_cast<int>(std::lround(spec.bilingual_share * n_multi));
  std::vector<bool> bilingual(static_cast<std::size_t>(n_multi), false);
  std::fill(bilingual.begin(), bilingual.begin() + n_bilingual, true);
  Shuffle(bilingual, erng);

  auto pick_others = [&](const std::string &exclude, int count) {
    std::vector<std::string> pool;
    for (const std::string &l : others) {
      if (l != exclude) pool.push_back(l);
    }
    Shuffle(pool, erng);
    pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(count)));
    return pool;
  };
  auto latent = [&](EditorPlan &e, double shift) {
    e.z = shift + StandardNormal(erng);
    e.target = 12.0 + 4.0 * e.z;
  };

  for (int i = 0; i < n_multi; ++i) {
    EditorPlan e;
    const bool primary = i < spec.n_primary;
    const int extra = bilingual[static_cast<std::size_t>(i)]
                          ? 1
                          : UniformInt(erng, 2, std::min<int>(4, static_cast<int>(others.size())));
    if (primary) {
      e.id = Id('P', i);
      e.group = "primary";
      e.primary_lang = target;
      e.sessions_by_lang.emplace_back(target, UniformInt(erng, 6, 10));
      for (const std::string &l : pick_others("", extra)) {
        e.sessions_by_lang.emplace_back(l, UniformInt(erng, 1, 3));
      }
      latent(e, spec.entropy_shift);
      e.article_rate = spec.article_rate + spec.article_shift;
    } else {
      e.id = Id('N', i - spec.n_primary);
      e.group = "non_primary";
      e.primary_lang = others[UniformIndex(erng, others.size())];
      e.sessions_by_lang.emplace_back(e.primary_lang, UniformInt(erng, 10, 14));
      e.sessions_by_lang.emplace_back(target, UniformInt(erng, 4, 7));
      for (const std::string &l : pick_others(e.primary_lang, extra - 1)) {
        e.sessions_by_lang.emplace_back(l, UniformInt(erng, 1, 2));
      }
      latent(e, 0.0);
      e.article_rate = spec.article_rate;
    }
    editors.push_back(std::move(e));
  }
  for (int i = 0; i < spec.n_monolingual; ++i) {
    EditorPlan e;
    e.id = Id('M', i);
    e.group = "monolingual";
    e.primary_lang = langs[UniformIndex(erng, langs.size())];
    e.sessions_by_lang.emplace_back(e.primary_lang, UniformInt(erng, 3, 6));
    latent(e, 0.0);
    e.article_rate = spec.article_rate;
    editors.push_back(std::move(e));
  }
  for (int i = 0; i < spec.n_outliers; ++i) {
    EditorPlan e;
    e.id = Id('X', i);
    e.group = "outlier";
    e.primary_lang = target;
    e.sessions_by_lang.emplace_back(target, 3);
    for (const std::string &l : others) e.sessions_by_lang.emplace_back(l, 1);
    latent(e, 0.0);
    e.article_rate = spec.article_rate;
    editors.push_back(std::move(e));
  }

  // Articles and their initial revisions.
  std::map<std::string, Vocabulary> vocab;
  std::map<std::string, std::vector<Article>> articles;
  Rng trng(SubSeed(spec.seed, "fixture/text"));
  uint64_t next_rev = 1;
  const fs::path rev_root = out_dir / "revisions";
  std::size_t n_revisions = 0;
  auto write_revision = [&](const std::string &lang, const Article &a) {
    std::ofstream os = OpenOut(RevisionPath(rev_root, lang, a.rev));
    for (const Line &l : a.lines) os << l.Render() << '\n';
    ++n_revisions;
  };
  for (const std::string &lang : langs) {
    vocab[lang] = MakeVocabulary(spec, lang);
    const Vocabulary &v = vocab[lang];
    for (int t = 0; t < spec.n_topics; ++t) {
      const auto candidates = Candidates(v, t);
      std::vector<const Word *> topical;
      for (const Word &w : v.topic[static_cast<std::size_t>(t)]) topical.push_back(&w);
      for (int j = 0; j < spec.articles_per_topic; ++j) {
        Article a;
        a.id = "t" + std::to_string(t) + "-a" + std::to_string(j);
        a.title = "Topic " + std::to_string(t) + " article " + std::to_string(j);
        a.topic = t;
        a.lines.push_back(MakeParagraph(trng, topical, 15, spec.paragraph_tokens,
                                        lang, spec.article_rate));
        for (int p = 0; p < kPoolLines; ++p) {
          a.lines.push_back(MakeParagraph(trng, candidates,
                                          UniformInt(trng, kMinDiversity, kMaxDiversity),
                                          spec.paragraph_tokens, lang,
                                          spec.article_rate));
        }
        a.lines.push_back(MakeParagraph(trng, topical, 15, spec.paragraph_tokens,
                                        lang, spec.article_rate));
        Line category;
        category.raw = "[[Category:Topic " + std::to_string(t) + "]]";
        a.lines.push_back(category);
        a.rev = std::to_string(next_rev++);
        write_revision(lang, a);
        articles[lang].push_back(std::move(a));
      }
    }
  }

  // Session timeline.
  Rng srng(SubSeed(spec.seed, "fixture/timeline"));
  std::vector<PlannedSession> sessions;
  for (std::size_t ei = 0; ei < editors.size(); ++ei) {
    std::vector<std::string> order;
    for (const auto &[lang, n] : editors[ei].sessions_by_lang) {
      for (int s = 0; s < n; ++s) order.push_back(lang);
    }
    Shuffle(order, srng);
    int64_t t = spec.start_ts + static_cast<int64_t>(UniformIndex(srng, 3 * 86400));
    for (const std::string &lang : order) {
      PlannedSession s;
      s.editor = ei;
      s.lang = lang;
      s.article = UniformIndex(srng, articles[lang].size());
      s.visible = UniformDouble(srng) >= spec.non_visible_rate;
      const int revisions = UniformInt(srng, 1, 3);
      for (int r = 0; r < revisions; ++r) {
        if (r > 0) t += UniformInt(srng, 60, 1800);
        s.times.push_back(t);
      }
      sessions.push_back(std::move(s));
      t += 2 * 3600 + static_cast<int64_t>(UniformIndex(srng, 86400));
    }
  }

  std::vector<Event> events;
  for (std::size_t si = 0; si < sessions.size(); ++si) {
    for (std::size_t r = 0; r < sessions[si].times.size(); ++r) {
      events.push_back({sessions[si].times[r], si, r});
    }
  }
  std::sort(events.begin(), events.end());

  // Apply edits in global time order.
  std::vector<EditRecord> records;
  std::vector<ManifestEntry> manifest(sessions.size());
  std::set<std::tuple<std::string, std::string, int>> tagged;
  std::ofstream tags = OpenOut(out_dir / "tags.tsv");
  auto tag_line = [&](const std::string &lang, const std::string &rev, int k,
                      const Line &line) {
    if (!tagged.insert({lang, rev, k}).second) return;
    for (std::size_t i = 0; i < line.tokens.size(); ++i) {
      tags << lang << '\t' << rev << '\t' << k << '\t' << line.tokens[i] << '\t'
           << line.tags[i] << '\n';
    }
  };
  next_rev = 100000;
  for (const Event &ev : events) {
    PlannedSession &s = sessions[ev.session];
    const EditorPlan &e = editors[s.editor];
    Article &a = articles[s.lang][s.article];
    const std::string pre_rev = a.rev;
    if (ev.step == 0) {
      if (s.visible) {
        double best = 1e300;
        for (int k = 1; k <= kPoolLines; ++k) {
          const double d = std::abs(a.lines[static_cast<std::size_t>(k)].diversity - e.target);
          if (d < best) {
            best = d;
            s.line = k;
          }
        }
      } else {
        s.line = UniformInt(trng, 1, kPoolLines);
      }
      manifest[ev.session] = {e.id, s.lang, a.id, s.times.front(), pre_rev, ""};
    }
    Line &line = a.lines[static_cast<std::size_t>(s.line)];
    if (s.visible) {
      tag_line(s.lang, pre_rev, s.line, line);
      const int m = ClampDiversity(e.target + StandardNormal(trng));
      line = MakeParagraph(trng, Candidates(vocab[s.lang], a.topic), m,
                           spec.paragraph_tokens, s.lang, e.article_rate);
    } else {
      std::vector<std::size_t> plain;
      for (std::size_t i = 0; i < line.tokens.size(); ++i) {
        if (!line.linked[i]) plain.push_back(i);
      }
      if (!plain.empty()) line.linked[plain[UniformIndex(trng, plain.size())]] = true;
    }
    a.rev = std::to_string(next_rev++);
    if (s.visible) tag_line(s.lang, a.rev, s.line, line);
    write_revision(s.lang, a);
    manifest[ev.session].post_rev = a.rev;

    EditRecord r;
    r.editor_id = e.id;
    r.article_id = a.id;
    r.title = a.title;
    r.lang = s.lang;
    r.timestamp = ev.ts;
    r.revision_id = a.rev;
    r.is_minor = !s.visible;
    records.push_back(std::move(r));
  }
  {
    std::ofstream os = OpenOut(rev_root / "manifest.tsv");
    WriteManifest(manifest, os);
  }

  // Records plus noise.
  Rng nrng(SubSeed(spec.seed, "fixture/noise"));
  const int64_t horizon = records.empty() ? spec.start_ts : records.back().timestamp;
  auto noise_ts = [&]() {
    return spec.start_ts +
           static_cast<int64_t>(UniformIndex(nrng, static_cast<uint64_t>(horizon - spec.start_ts + 1)));
  };
  std::vector<EditRecord> noise;
  for (int i = 0; i < spec.n_bot_records; ++i) {
    const std::string &lang = langs[UniformIndex(nrng, langs.size())];
    const Article &a = articles[lang][UniformIndex(nrng, articles[lang].size())];
    EditRecord r;
    r.editor_id = "B" + Id('0', i).substr(1) + "Bot";
    r.article_id = a.id;
    r.title = a.title;
    r.lang = lang;
    r.timestamp = noise_ts();
    r.revision_id = std::to_string(next_rev++);
    r.is_bot = true;
    noise.push_back(std::move(r));
  }
  for (int i = 0; i < spec.n_talk_records && !editors.empty(); ++i) {
    const EditorPlan &e = editors[UniformIndex(nrng, editors.size())];
    EditRecord r;
    r.editor_id = e.id;
    r.article_id = "talk-" + std::to_string(i);
    r.title = "Talk:Topic " + std::to_string(i);
    r.lang = e.primary_lang;
    r.timestamp = noise_ts();
    r.revision_id = std::to_string(next_rev++);
    r.namespace_id = 1;
    noise.push_back(std::move(r));
  }
  std::vector<std::string> lines;
  {
    std::ostringstream os;
    WriteEditRecords(records, os);
    WriteEditRecords(noise, os);
    std::istringstream is(os.str());
    for (std::string l; std::getline(is, l);) lines.push_back(l);
  }
  const std::size_t n_clean = lines.size();
  for (int i = 0; i < spec.n_duplicates && n_clean > 0; ++i) {
    lines.push_back(lines[UniformIndex(nrng, n_clean)]);
  }
  for (int i = 0; i < spec.n_malformed; ++i) {
    switch (i % 3) {
      case 0:
        lines.push_back("{\"editor\": \"truncated");
        break;
      case 1:
        lines.push_back("{\"editor\": \"P001\", \"lang\": \"en\"}");
        break;
      default:
        lines.push_back("not json at all");
        break;
    }
  }
  Shuffle(lines, nrng);
  {
    std::ofstream os = OpenOut(out_dir / "records.jsonl");
    for (const std::string &l : lines) os << l << '\n';
  }

  // Ground truth.
  FixtureSummary summary;
  summary.records = lines.size();
  summary.revisions = n_revisions;
  summary.sessions = sessions.size();
  summary.realized_bilingual_share =
      n_multi > 0 ? static_cast<double>(n_bilingual) / n_multi : 0.0;

  json truth;
  truth["seed"] = spec.seed;
  truth["target_lang"] = target;
  truth["entropy_shift"] = spec.entropy_shift;
  truth["article_rate"] = spec.article_rate;
  truth["article_shift"] = spec.article_shift;
  truth["non_visible_rate"] = spec.non_visible_rate;
  truth["bilingual_share"] = spec.bilingual_share;
  truth["realized_bilingual_share"] = summary.realized_bilingual_share;
  truth["tolerance"] = {{"bilingual_share", 0.01}, {"entropy_p", 0.01}};
  truth["topic_proportions"] =
      std::vector<double>(static_cast<std::size_t>(spec.n_topics), 1.0 / spec.n_topics);
  json eds = json::array();
  for (const EditorPlan &e : editors) {
    json j;
    j["id"] = e.id;
    j["group"] = e.group;
    j["primary_lang"] = e.primary_lang;
    j["z"] = e.z;
    j["target_diversity"] = e.target;
    json by_lang = json::object();
    for (const auto &[lang, n] : e.sessions_by_lang) by_lang[lang] = n;
    j["sessions"] = by_lang;
    eds.push_back(j);
  }
  truth["editors"] = eds;
  json topics = json::object();
  for (const std::string &lang : langs) {
    json m = json::object();
    for (const Article &a : articles[lang]) m[a.id] = a.topic;
    topics[lang] = m;
  }
  truth["article_topics"] = topics;
  {
    std::ofstream os = OpenOut(out_dir / "ground_truth.json");
    os << truth.dump(2) << '\n';
  }
  {
    std::ofstream os = OpenOut(out_dir / "pipeline.cfg");
    os << "# Generated by editlens fixture.\n"
       << "records = records.jsonl\n"
       << "revisions = revisions\n"
       << "tags = tags.tsv\n"
       << "out = report\n"
       << "seed = " << spec.seed << "\n"
       << "k = " << spec.lda_k << "\n"
       << "iters = " << spec.lda_iterations << "\n"
       << "min-pts = 4\n";
  }
  return summary;
}

}  // namespace editlens
