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

#include "editlens/pipeline.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "editlens/error.h"
#include "editlens/metrics.h"
#include "editlens/random.h"
#include "editlens/text.h"
#include "editlens/wikitext.h"

namespace editlens {
namespace {

std::ifstream OpenIn(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return in;
}

std::ofstream OpenOut(const fs::path &path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

fs::path Sibling(const fs::path &path, const std::string &suffix) {
  return path.parent_path() / (path.stem().string() + suffix);
}

uint64_t HashFile(const fs::path &path, uint64_t h) {
  std::ifstream in = OpenIn(path);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    h = Fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  }
  return h;
}

uint64_t HashPath(const fs::path &path, uint64_t h) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kIo, "missing input " + path.string());
  }
  if (!fs::is_directory(path)) return HashFile(path, h);
  std::vector<fs::path> files;
  for (const auto &entry : fs::recursive_directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path &f : files) {
    h = Fnv1a64(fs::relative(f, path).generic_string(), h);
    h = HashFile(f, h);
  }
  return h;
}

std::string Hex(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string JoinLangs(const std::vector<std::string> &langs) {
  std::string out;
  for (const auto &l : langs) out += l + ",";
  return out;
}

}  // namespace

IngestSummary IngestStage(const fs::path &input, const FilterPolicy &policy,
                          double max_malformed_fraction, const fs::path &out) {
  std::ifstream in = OpenIn(input);
  ParseOptions options;
  options.max_malformed_fraction = max_malformed_fraction;
  const ParseReport parsed = ParseEditRecords(in, options);
  const FilterReport filtered = FilterRecords(parsed.records, policy);
  std::ofstream os = OpenOut(out);
  WriteEditRecords(filtered.kept, os);

  std::ofstream log = OpenOut(Sibling(out, "_malformed.tsv"));
  for (const MalformedLine &m : parsed.malformed) {
    log << m.line_no << '\t' << m.reason << '\n';
  }
  IngestSummary s;
  s.lines = parsed.lines;
  s.malformed = parsed.malformed.size();
  s.duplicates = parsed.duplicates;
  s.dropped_bot = filtered.dropped_bot;
  s.dropped_namespace = filtered.dropped_namespace;
  s.dropped_minor = filtered.dropped_minor;
  s.kept = filtered.kept.size();
  return s;
}

std::size_t SessionsStage(const fs::path &records, int64_t gap_seconds,
                          const fs::path &out) {
  std::ifstream in = OpenIn(records);
  // Records were validated at ingest; any failure here is fatal.
  const ParseReport parsed = ParseEditRecords(in, ParseOptions{0.0});
  const auto sessions = BuildSessions(parsed.records, gap_seconds);
  std::ofstream os = OpenOut(out);
  WriteSessions(sessions, os);
  return sessions.size();
}

ProfileReport ClassifyStage(const fs::path &sessions_path, int max_langs,
                            RankingBasis basis, const fs::path &out) {
  std::ifstream in = OpenIn(sessions_path);
  const auto sessions = ReadSessions(in);
  ProfileReport report = ProfileEditors(sessions, max_langs, basis);
  std::ofstream os = OpenOut(out);
  WriteProfilesCsv(report.profiles, os);

  const LanguageHistograms h = ComputeLanguageHistograms(report.profiles);
  std::ofstream hist = OpenOut(out.parent_path() / "language_histogram.csv");
  hist << "kind,lang,key,share\n";
  for (const auto &[n, share] : h.n_langs_share) {
    hist << "n_langs,," << n << ',' << FormatDouble(share) << '\n';
  }
  for (const auto &[lang, comp] : h.primary_composition) {
    for (const auto &[primary, share] : comp) {
      hist << "primary_composition," << CsvEscape(lang) << ','
           << CsvEscape(primary) << ',' << FormatDouble(share) << '\n';
    }
  }
  hist << "excluded,,monolingual," << report.monolingual_excluded << '\n';
  hist << "excluded,,outliers," << report.outliers_excluded << '\n';
  return report;
}

std::size_t DiffStage(const fs::path &sessions_path, const fs::path &revisions,
                      const std::optional<fs::path> &profiles,
                      const fs::path &out) {
  std::ifstream in = OpenIn(sessions_path);
  std::vector<ArticleEditSession> sessions = ReadSessions(in);
  if (profiles) {
    std::ifstream pin = OpenIn(*profiles);
    std::set<std::string> editors;
    for (const ProfileRow &row : ReadProfilesCsv(pin)) {
      editors.insert(row.editor_id);
    }
    std::erase_if(sessions, [&](const ArticleEditSession &s) {
      return !editors.count(s.editor_id);
    });
  }
  const auto diffs = DiffSessions(sessions, revisions);
  std::ofstream os = OpenOut(out);
  WriteSessionDiffs(diffs, os);
  return diffs.size();
}

std::size_t MetricsStage(const fs::path &pairs,
                         const std::optional<fs::path> &tags_path,
                         const MetricsStageOptions &options,
                         const fs::path &out) {
  std::ifstream in = OpenIn(pairs);
  const auto diffs = ReadSessionDiffs(in);
  std::optional<TagStore> tags;
  if (tags_path) {
    std::ifstream tin = OpenIn(*tags_path);
    tags = TagStore::Load(tin);
  }
  LexiconTagger fallback;
  MetricOptions mo;
  mo.sample_k = options.sample_k;
  mo.reps = options.reps;
  mo.seed = options.seed;
  const MetricsResult result =
      ComputeEditorMetrics(diffs, tags ? &*tags : nullptr,
                           options.fallback_tagger ? &fallback : nullptr, mo);
  std::ofstream os = OpenOut(out);
  WriteMetricsCsv(result.rows, os);
  std::ofstream es = OpenOut(Sibling(out, "_edits.csv"));
  WriteEditScoresCsv(result.edit_scores, es);
  std::ofstream xs = OpenOut(Sibling(out, "_exclusions.csv"));
  WriteExclusionsCsv(result.exclusions, xs);
  if (result.untagged_paragraphs > 0) {
    std::cerr << "metrics: " << result.untagged_paragraphs
              << " paragraphs without POS tags skipped\n";
  }
  return result.rows.size();
}

std::size_t DocsStage(const fs::path &pairs, const fs::path &revisions,
                      double max_doc_freq, const fs::path &out) {
  std::ifstream in = OpenIn(pairs);
  const auto diffs = ReadSessionDiffs(in);
  // (lang, article) -> (start_ts, post_rev) of the latest session.
  std::map<std::pair<std::string, std::string>, std::pair<int64_t, std::string>>
      latest;
  for (const SessionDiffRecord &d : diffs) {
    auto key = std::make_pair(d.lang, d.article_id);
    auto value = std::make_pair(d.start_ts, d.post_rev);
    auto it = latest.find(key);
    if (it == latest.end() || it->second < value) latest[key] = value;
  }

  std::map<std::string, std::map<std::string, std::map<std::string, int>>>
      by_lang;
  for (const auto &[key, value] : latest) {
    const auto &[lang, article] = key;
    auto &terms = by_lang[lang][lang + ":" + article];
    for (const std::string &line :
         ReadRevisionLines(revisions, lang, value.second)) {
      for (const std::string &tok : Tokenize(StripMarkup(line))) {
        if (std::all_of(tok.begin(), tok.end(),
                        [](char c) { return c >= '0' && c <= '9'; })) {
          continue;
        }
        ++terms[FoldCase(tok)];
      }
    }
  }

  std::ofstream os = OpenOut(out);
  std::size_t docs = 0;
  for (auto &[lang, doc_terms] : by_lang) {
    std::map<std::string, int> df;
    for (const auto &[doc, terms] : doc_terms) {
      for (const auto &[term, count] : terms) ++df[term];
    }
    const double limit = max_doc_freq * static_cast<double>(doc_terms.size());
    for (auto &[doc, terms] : doc_terms) {
      if (max_doc_freq < 1.0) {
        std::erase_if(terms, [&](const auto &kv) { return df[kv.first] > limit; });
      }
    }
    const BagOfWordsCorpus corpus = MakeCorpus(doc_terms);
    WriteBagOfWords(corpus, os);
    docs += corpus.docs.size();
  }
  return docs;
}

std::vector<LanguageTopics> TopicsStage(const fs::path &docs,
                                        const TopicOptions &options,
                                        const fs::path &out) {
  std::ifstream in = OpenIn(docs);
  const BagOfWordsCorpus corpus = ReadBagOfWords(in);
  std::vector<LanguageTopics> topics;
  for (const auto &[lang, sub] : SplitCorpusByLanguage(corpus)) {
    if (sub.docs.size() < 2 || sub.num_tokens() == 0) {
      std::cerr << "topics: skipping edition '" << lang << "' ("
                << sub.docs.size() << " documents)\n";
      continue;
    }
    TopicOptions lang_options = options;
    lang_options.lda.seed = SubSeed(options.lda.seed, "lda/" + lang);
    topics.push_back(RunTopics(lang, sub, lang_options));
  }
  std::ofstream os = OpenOut(out);
  WriteTopicsJson(topics, os);
  return topics;
}

std::vector<GroupComparison> CompareStage(const fs::path &metrics_path,
                                          const fs::path &profiles_path,
                                          const fs::path &topics_path,
                                          const CompareOptions &options,
                                          const fs::path &out_dir) {
  std::ifstream pin = OpenIn(profiles_path);
  const auto profile_rows = ReadProfilesCsv(pin);
  std::map<std::pair<std::string, std::string>, GroupLabel> group;
  std::set<std::string> langs;
  for (const ProfileRow &row : profile_rows) {
    group[{row.editor_id, row.lang}] = row.group;
    langs.insert(row.lang);
  }
  if (!options.languages.empty()) {
    langs = std::set<std::string>(options.languages.begin(),
                                  options.languages.end());
  }
  auto group_of = [&](const std::string &editor, const std::string &lang) {
    auto it = group.find({editor, lang});
    return it == group.end() ? GroupLabel::kNotPresent : it->second;
  };

  std::ifstream min = OpenIn(metrics_path);
  const auto metric_rows = ReadMetricsCsv(min);
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> samples;
  for (const MetricRow &r : metric_rows) {
    if (!langs.count(r.lang)) continue;
    const GroupLabel g = group_of(r.editor_id, r.lang);
    if (g == GroupLabel::kNotPresent) continue;
    auto &s = samples[{r.lang, r.metric, r.aspect}];
    (g == GroupLabel::kPrimary ? s.first : s.second).push_back(r.value);
  }

  std::vector<GroupComparison> comparisons;
  for (const auto &[key, s] : samples) {
    const auto &[lang, metric, aspect] = key;
    comparisons.push_back(CompareGroups(s.first, s.second, lang, metric,
                                        aspect, options.variant));
  }

  fs::create_directories(out_dir);
  {
    std::ofstream os = OpenOut(out_dir / "comparisons.csv");
    os << "lang,metric,aspect,n_primary,n_nonprimary,mean_primary,"
          "mean_nonprimary,se_primary,se_nonprimary,t,df,p,stars,testable,"
          "note\n";
    for (const GroupComparison &g : comparisons) {
      os << CsvEscape(g.lang) << ',' << g.metric << ',' << g.aspect << ','
         << g.n_primary << ',' << g.n_nonprimary << ','
         << FormatDouble(g.mean_primary) << ','
         << FormatDouble(g.mean_nonprimary) << ','
         << FormatDouble(g.se_primary) << ',' << FormatDouble(g.se_nonprimary)
         << ',';
      if (g.testable) {
        os << FormatDouble(g.test.t) << ',' << FormatDouble(g.test.df) << ','
           << FormatDouble(g.test.p);
      } else {
        os << ",,";
      }
      os << ',' << g.stars << ',' << (g.testable ? "true" : "false") << ','
         << CsvEscape(g.note) << '\n';
    }
  }
  {
    std::ofstream os = OpenOut(out_dir / "plot_data.csv");
    os << "lang,metric,aspect,group,mean,se,n\n";
    for (const GroupComparison &g : comparisons) {
      os << CsvEscape(g.lang) << ',' << g.metric << ',' << g.aspect
         << ",primary," << FormatDouble(g.mean_primary) << ','
         << FormatDouble(g.se_primary) << ',' << g.n_primary << '\n';
      os << CsvEscape(g.lang) << ',' << g.metric << ',' << g.aspect
         << ",non_primary," << FormatDouble(g.mean_nonprimary) << ','
         << FormatDouble(g.se_nonprimary) << ',' << g.n_nonprimary << '\n';
    }
  }

  std::ifstream tin = OpenIn(topics_path);
  const auto labels = ReadTopicLabels(tin);

  if (options.sessions) {
    std::ifstream sin = OpenIn(*options.sessions);
    const auto sessions = ReadSessions(sin);
    const auto interest = InterestLevels(sessions, labels);
    std::map<std::string, std::set<int>> topics_by_lang;
    for (const auto &[key, topic] : labels) topics_by_lang[key.first].insert(topic);

    std::ofstream os = OpenOut(out_dir / "interest.csv");
    os << "lang,topic,n_primary,n_nonprimary,mean_primary,mean_nonprimary,t,"
          "df,p,stars\n";
    std::ofstream cs = OpenOut(out_dir / "interest_chi2.csv");
    cs << "lang,chi2,df,p,dropped_columns,note\n";
    for (const std::string &lang : langs) {
      const auto tit = topics_by_lang.find(lang);
      if (tit == topics_by_lang.end()) continue;
      const std::vector<int> topic_ids(tit->second.begin(), tit->second.end());
      std::vector<std::vector<double>> table(2,
                                             std::vector<double>(topic_ids.size()));
      std::map<int, std::pair<std::vector<double>, std::vector<double>>> props;
      for (const InterestProfile &p : interest) {
        if (p.lang != lang) continue;
        const GroupLabel g = group_of(p.editor_id, lang);
        if (g == GroupLabel::kNotPresent) continue;
        const int row = g == GroupLabel::kPrimary ? 0 : 1;
        for (std::size_t t = 0; t < topic_ids.size(); ++t) {
          auto cit = p.session_counts.find(topic_ids[t]);
          const double count = cit == p.session_counts.end() ? 0 : cit->second;
          table[row][t] += count;
          auto pit = p.proportions.find(topic_ids[t]);
          const double share = pit == p.proportions.end() ? 0.0 : pit->second;
          auto &pp = props[topic_ids[t]];
          (row == 0 ? pp.first : pp.second).push_back(share);
        }
      }
      for (const auto &[topic, pp] : props) {
        const GroupComparison g = CompareGroups(pp.first, pp.second, lang,
                                                "interest", "session",
                                                options.variant);
        os << CsvEscape(lang) << ',' << topic << ',' << g.n_primary << ','
           << g.n_nonprimary << ',' << FormatDouble(g.mean_primary) << ','
           << FormatDouble(g.mean_nonprimary) << ',';
        if (g.testable) {
          os << FormatDouble(g.test.t) << ',' << FormatDouble(g.test.df) << ','
             << FormatDouble(g.test.p);
        } else {
          os << ",,";
        }
        os << ',' << g.stars << '\n';
      }
      try {
        const ChiSquareResult chi = ChiSquareTest(table);
        std::string dropped;
        for (std::size_t c : chi.dropped_columns) {
          if (!dropped.empty()) dropped += ' ';
          dropped += std::to_string(topic_ids[c]);
        }
        cs << CsvEscape(lang) << ',' << FormatDouble(chi.chi2) << ','
           << FormatDouble(chi.df) << ',' << FormatDouble(chi.p) << ','
           << dropped << ",\n";
      } catch (const Error &e) {
        cs << CsvEscape(lang) << ",,,,," << CsvEscape(e.what()) << '\n';
      }
    }
  }

  if (options.edit_scores) {
    std::ifstream ein = OpenIn(*options.edit_scores);
    const auto edit_rows = ReadEditScoresCsv(ein);
    // (lang, metric, aspect, group) -> topic -> scores
    std::map<std::tuple<std::string, std::string, std::string, std::string>,
             std::map<std::string, std::vector<double>>>
        by_topic;
    for (const EditScoreRow &r : edit_rows) {
      if (!langs.count(r.lang)) continue;
      const GroupLabel g = group_of(r.editor_id, r.lang);
      if (g == GroupLabel::kNotPresent) continue;
      const auto lit = labels.find({r.lang, r.article_id});
      if (lit == labels.end()) continue;
      by_topic[{r.lang, r.metric, r.aspect, std::string(GroupLabelName(g))}]
              [std::to_string(lit->second)]
                  .push_back(r.value);
    }
    std::ofstream os = OpenOut(out_dir / "topic_controlled.csv");
    os << "lang,metric,aspect,group,inter_topic_mean,n_topics\n";
    for (const auto &[key, topics] : by_topic) {
      const auto &[lang, metric, aspect, grp] = key;
      const TopicControlledScore s = TopicControlledMean(topics);
      os << CsvEscape(lang) << ',' << metric << ',' << aspect << ',' << grp
         << ',' << FormatDouble(s.inter_topic_mean) << ','
         << s.per_topic.size() << '\n';
    }
  }
  return comparisons;
}

const std::set<std::string> &PipelineConfig::Keys() {
  static const std::set<std::string> keys = {
      "records",      "revisions",   "tags",       "out",
      "drop-bots",    "keep-minor",  "article-namespace-only",
      "max-malformed", "gap-seconds", "max-langs",  "rank-by",
      "languages",    "k",           "alpha",      "beta",
      "iters",        "eps",         "min-pts",    "top-terms",
      "max-doc-freq", "sample-k",    "reps",       "seed",
      "pooled",
  };
  return keys;
}

namespace {

double AutoOrPositive(const KeyValueConfig &c, const std::string &key) {
  if (!c.Has(key) || c.GetString(key) == "auto") return 0.0;
  const double v = c.GetDouble(key);
  if (!(v > 0)) throw Error(ErrorCode::kConfig, "key '" + key + "' must be > 0");
  return v;
}

int64_t Positive(const KeyValueConfig &c, const std::string &key, int64_t def) {
  const int64_t v = c.GetInt(key, def);
  if (v <= 0) throw Error(ErrorCode::kConfig, "key '" + key + "' must be > 0");
  return v;
}

}  // namespace

PipelineConfig PipelineConfig::FromConfig(const KeyValueConfig &c,
                                          const fs::path &base_dir) {
  c.RejectUnknown(Keys());
  auto resolve = [&](const std::string &p) {
    fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  PipelineConfig cfg;
  cfg.records = resolve(c.GetString("records"));
  cfg.revisions = resolve(c.GetString("revisions"));
  if (c.Has("tags") && !c.GetString("tags").empty()) {
    cfg.tags = resolve(c.GetString("tags"));
  }
  cfg.out = resolve(c.GetString("out"));
  cfg.policy.drop_bots = c.GetBool("drop-bots", true);
  cfg.policy.keep_minor = c.GetBool("keep-minor", true);
  cfg.policy.article_namespace_only = c.GetBool("article-namespace-only", true);
  cfg.max_malformed = c.GetDouble("max-malformed", 0.10);
  if (cfg.max_malformed < 0 || cfg.max_malformed > 1) {
    throw Error(ErrorCode::kConfig, "key 'max-malformed' must be in [0, 1]");
  }
  cfg.gap_seconds = Positive(c, "gap-seconds", kDefaultGapSeconds);
  cfg.max_langs = static_cast<int>(Positive(c, "max-langs", kDefaultMaxLangs));
  const std::string rank = c.GetString("rank-by", "sessions");
  if (rank == "sessions") {
    cfg.rank_by = RankingBasis::kSessions;
  } else if (rank == "edits") {
    cfg.rank_by = RankingBasis::kEdits;
  } else {
    throw Error(ErrorCode::kConfig, "key 'rank-by' must be sessions or edits");
  }
  if (c.Has("languages")) {
    for (const std::string &l : SplitString(c.GetString("languages"), ',')) {
      if (!Trim(l).empty()) cfg.languages.emplace_back(Trim(l));
    }
  }
  cfg.topics.lda.k = static_cast<int>(Positive(c, "k", 20));
  if (cfg.topics.lda.k < 2) throw Error(ErrorCode::kConfig, "key 'k' must be >= 2");
  cfg.topics.lda.alpha = AutoOrPositive(c, "alpha");
  cfg.topics.lda.beta = AutoOrPositive(c, "beta");
  cfg.topics.lda.iterations = static_cast<int>(Positive(c, "iters", 2000));
  cfg.topics.eps = AutoOrPositive(c, "eps");
  cfg.topics.min_pts = static_cast<int>(Positive(c, "min-pts", 5));
  cfg.topics.top_terms = static_cast<std::size_t>(Positive(c, "top-terms", 10));
  cfg.max_doc_freq = c.GetDouble("max-doc-freq", 0.5);
  if (!(cfg.max_doc_freq > 0)) {
    throw Error(ErrorCode::kConfig, "key 'max-doc-freq' must be > 0");
  }
  cfg.sample_k = static_cast<int>(Positive(c, "sample-k", 3));
  cfg.reps = static_cast<int>(Positive(c, "reps", 100));
  if (!c.Has("seed")) {
    throw Error(ErrorCode::kConfig, "key 'seed' is required");
  }
  const int64_t seed = c.GetInt("seed");
  if (seed < 0) throw Error(ErrorCode::kConfig, "key 'seed' must be >= 0");
  cfg.seed = static_cast<uint64_t>(seed);
  cfg.topics.lda.seed = SubSeed(cfg.seed, "topics");
  cfg.pooled = c.GetBool("pooled", false);
  return cfg;
}

PipelineResult RunPipeline(const PipelineConfig &cfg) {
  PipelineResult result;
  result.report_dir = cfg.out;
  fs::create_directories(cfg.out);
  const fs::path stamps = cfg.out / ".stamps";
  fs::create_directories(stamps);

  const fs::path records = cfg.out / "records.bin";
  const fs::path sessions = cfg.out / "sessions.bin";
  const fs::path profiles = cfg.out / "profiles.csv";
  const fs::path pairs = cfg.out / "pairs.bin";
  const fs::path metrics = cfg.out / "metrics.csv";
  const fs::path docs = cfg.out / "docs.tsv";
  const fs::path topics = cfg.out / "topics.json";
  const fs::path comparisons = cfg.out / "comparisons.csv";

  // Runs `body` unless the stamp for (name, params, inputs) matches and the
  // outputs exist.
  auto stage = [&](const std::string &name, const std::string &params,
                   const std::vector<fs::path> &inputs,
                   const std::vector<fs::path> &outputs,
                   const std::function<void()> &body) {
    try {
      uint64_t h = Fnv1a64(name + "|" + params);
      for (const fs::path &in : inputs) h = HashPath(in, h);
      const std::string key = Hex(h);
      const fs::path stamp = stamps / name;
      bool fresh = fs::exists(stamp);
      for (const fs::path &o : outputs) fresh = fresh && fs::exists(o);
      if (fresh) {
        std::ifstream sin(stamp);
        std::string stored;
        std::getline(sin, stored);
        if (stored == key) {
          result.stages.push_back({name, true});
          return;
        }
      }
      fs::remove(stamp);
      body();
      std::ofstream sout(stamp, std::ios::trunc);
      sout << key << '\n';
      result.stages.push_back({name, false});
    } catch (const Error &e) {
      throw Error(ErrorCode::kStage, "stage '" + name + "' failed: " + e.what());
    } catch (const std::exception &e) {
      throw Error(ErrorCode::kStage, "stage '" + name + "' failed: " + e.what());
    }
  };

  const std::string policy_params =
      std::to_string(cfg.policy.drop_bots) +
      std::to_string(cfg.policy.keep_minor) +
      std::to_string(cfg.policy.article_namespace_only) + "/" +
      FormatDouble(cfg.max_malformed);
  stage("ingest", policy_params, {cfg.records}, {records}, [&] {
    IngestStage(cfg.records, cfg.policy, cfg.max_malformed, records);
  });
  stage("sessions", std::to_string(cfg.gap_seconds), {records}, {sessions},
        [&] { SessionsStage(records, cfg.gap_seconds, sessions); });
  stage("classify",
        std::to_string(cfg.max_langs) + "/" +
            std::to_string(static_cast<int>(cfg.rank_by)),
        {sessions}, {profiles},
        [&] { ClassifyStage(sessions, cfg.max_langs, cfg.rank_by, profiles); });
  stage("diff", "", {sessions, profiles, cfg.revisions}, {pairs},
        [&] { DiffStage(sessions, cfg.revisions, profiles, pairs); });

  std::vector<fs::path> metric_inputs = {pairs};
  if (cfg.tags) metric_inputs.push_back(*cfg.tags);
  stage("metrics",
        std::to_string(cfg.sample_k) + "/" + std::to_string(cfg.reps) + "/" +
            std::to_string(cfg.seed),
        metric_inputs, {metrics}, [&] {
          MetricsStageOptions mo;
          mo.sample_k = cfg.sample_k;
          mo.reps = cfg.reps;
          mo.seed = SubSeed(cfg.seed, "metrics");
          MetricsStage(pairs, cfg.tags, mo, metrics);
        });
  stage("docs", FormatDouble(cfg.max_doc_freq), {pairs, cfg.revisions}, {docs},
        [&] { DocsStage(pairs, cfg.revisions, cfg.max_doc_freq, docs); });

  const TopicOptions &to = cfg.topics;
  stage("topics",
        std::to_string(to.lda.k) + "/" + FormatDouble(to.lda.alpha) + "/" +
            FormatDouble(to.lda.beta) + "/" + std::to_string(to.lda.iterations) +
            "/" + std::to_string(to.lda.seed) + "/" + FormatDouble(to.eps) +
            "/" + std::to_string(to.min_pts) + "/" +
            std::to_string(to.top_terms),
        {docs}, {topics}, [&] { TopicsStage(docs, to, topics); });

  CompareOptions co;
  co.languages = cfg.languages;
  co.variant = cfg.pooled ? TTestVariant::kPooled : TTestVariant::kWelch;
  co.sessions = sessions;
  co.edit_scores = cfg.out / "metrics_edits.csv";
  stage("compare", JoinLangs(cfg.languages) + "/" + std::to_string(cfg.pooled),
        {metrics, profiles, topics, sessions, *co.edit_scores}, {comparisons},
        [&] { CompareStage(metrics, profiles, topics, co, cfg.out); });
  return result;
}

}  // namespace editlens
