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

#include "editlens/topics.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include "editlens/error.h"
#include "editlens/text.h"
#include "json.hpp"

namespace editlens {

std::size_t BagOfWordsCorpus::num_tokens() const {
  std::size_t n = 0;
  for (const auto &doc : docs) {
    for (const auto &[term, count] : doc) n += static_cast<std::size_t>(count);
  }
  return n;
}

BagOfWordsCorpus MakeCorpus(
    const std::map<std::string, std::map<std::string, int>> &doc_terms) {
  BagOfWordsCorpus corpus;
  std::set<std::string> vocab;
  for (const auto &[doc, terms] : doc_terms) {
    for (const auto &[term, count] : terms) {
      if (count > 0) vocab.insert(term);
    }
  }
  corpus.vocab.assign(vocab.begin(), vocab.end());
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < corpus.vocab.size(); ++i) {
    ids[corpus.vocab[i]] = static_cast<int>(i);
  }
  for (const auto &[doc, terms] : doc_terms) {
    corpus.doc_ids.push_back(doc);
    auto &row = corpus.docs.emplace_back();
    for (const auto &[term, count] : terms) {
      if (count > 0) row.emplace_back(ids.at(term), count);
    }
  }
  return corpus;
}

BagOfWordsCorpus ReadBagOfWords(std::istream &in) {
  std::map<std::string, std::map<std::string, int>> doc_terms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = SplitString(line, '\t');
    int count = 0;
    bool ok = f.size() == 3;
    if (ok) {
      try {
        std::size_t used = 0;
        count = std::stoi(f[2], &used);
        ok = used == f[2].size() && count >= 0;
      } catch (const std::exception &) {
        ok = false;
      }
    }
    if (!ok) {
      throw Error(ErrorCode::kMalformedInput,
                  "bag-of-words line " + std::to_string(line_no));
    }
    doc_terms[f[0]][f[1]] += count;
  }
  return MakeCorpus(doc_terms);
}

void WriteBagOfWords(const BagOfWordsCorpus &corpus, std::ostream &out) {
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    for (const auto &[term, count] : corpus.docs[d]) {
      out << corpus.doc_ids[d] << '\t' << corpus.vocab[term] << '\t' << count
          << '\n';
    }
  }
}

std::map<std::string, BagOfWordsCorpus> SplitCorpusByLanguage(
    const BagOfWordsCorpus &corpus) {
  std::map<std::string, std::map<std::string, std::map<std::string, int>>>
      split;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const std::string &id = corpus.doc_ids[d];
    const auto colon = id.find(':');
    const std::string lang = colon == std::string::npos ? "" : id.substr(0, colon);
    auto &terms = split[lang][id];
    for (const auto &[term, count] : corpus.docs[d]) {
      terms[corpus.vocab[term]] += count;
    }
  }
  std::map<std::string, BagOfWordsCorpus> out;
  for (const auto &[lang, docs] : split) out[lang] = MakeCorpus(docs);
  return out;
}

GibbsSampler::GibbsSampler(const BagOfWordsCorpus &corpus, int k,
                           double alpha, double beta, uint64_t seed)
    : k_(k),
      vocab_size_(static_cast<int>(corpus.vocab.size())),
      alpha_(alpha),
      beta_(beta),
      seed_(seed),
      rng_(seed),
      topic_term_(k, std::vector<int>(corpus.vocab.size(), 0)),
      topic_total_(k, 0),
      weights_(k, 0.0) {
  words_.resize(corpus.docs.size());
  topics_.resize(corpus.docs.size());
  doc_topic_.assign(corpus.docs.size(), std::vector<int>(k, 0));
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    for (const auto &[term, count] : corpus.docs[d]) {
      words_[d].insert(words_[d].end(), count, term);
    }
    topics_[d].resize(words_[d].size());
    for (std::size_t i = 0; i < words_[d].size(); ++i) {
      const int z = static_cast<int>(UniformIndex(rng_, k_));
      topics_[d][i] = z;
      ++doc_topic_[d][z];
      ++topic_term_[z][words_[d][i]];
      ++topic_total_[z];
    }
  }
}

void GibbsSampler::Sweep() {
  const double vbeta = vocab_size_ * beta_;
  for (std::size_t d = 0; d < words_.size(); ++d) {
    std::vector<int> &dt = doc_topic_[d];
    for (std::size_t i = 0; i < words_[d].size(); ++i) {
      const int w = words_[d][i];
      int z = topics_[d][i];
      --dt[z];
      --topic_term_[z][w];
      --topic_total_[z];

      double total = 0.0;
      for (int t = 0; t < k_; ++t) {
        total += (dt[t] + alpha_) * (topic_term_[t][w] + beta_) /
                 (topic_total_[t] + vbeta);
        weights_[t] = total;
      }
      const double u = UniformDouble(rng_) * total;
      z = 0;
      while (z < k_ - 1 && weights_[z] <= u) ++z;

      topics_[d][i] = z;
      ++dt[z];
      ++topic_term_[z][w];
      ++topic_total_[z];
    }
  }
  ++sweeps_;
}

TopicModel GibbsSampler::Estimate() const {
  TopicModel model;
  model.k = k_;
  model.alpha = alpha_;
  model.beta = beta_;
  model.iterations = sweeps_;
  model.seed = seed_;
  model.doc_topic.resize(words_.size(), std::vector<double>(k_));
  for (std::size_t d = 0; d < words_.size(); ++d) {
    const double denom = static_cast<double>(words_[d].size()) + k_ * alpha_;
    for (int t = 0; t < k_; ++t) {
      model.doc_topic[d][t] = (doc_topic_[d][t] + alpha_) / denom;
    }
  }
  model.topic_term.resize(k_, std::vector<double>(vocab_size_));
  for (int t = 0; t < k_; ++t) {
    const double denom = topic_total_[t] + vocab_size_ * beta_;
    for (int w = 0; w < vocab_size_; ++w) {
      model.topic_term[t][w] = (topic_term_[t][w] + beta_) / denom;
    }
  }
  return model;
}

bool GibbsSampler::CountsConsistent() const {
  std::vector<std::vector<int>> tt(k_, std::vector<int>(vocab_size_, 0));
  std::vector<int> totals(k_, 0);
  for (std::size_t d = 0; d < words_.size(); ++d) {
    std::vector<int> dt(k_, 0);
    for (std::size_t i = 0; i < words_[d].size(); ++i) {
      const int z = topics_[d][i];
      if (z < 0 || z >= k_) return false;
      ++dt[z];
      ++tt[z][words_[d][i]];
      ++totals[z];
    }
    if (dt != doc_topic_[d]) return false;
    if (std::accumulate(dt.begin(), dt.end(), std::size_t{0}) !=
        words_[d].size()) {
      return false;
    }
  }
  return tt == topic_term_ && totals == topic_total_;
}

TopicModel FitLda(const BagOfWordsCorpus &corpus, const LdaOptions &options) {
  if (corpus.docs.empty() || corpus.num_tokens() == 0) {
    throw Error(ErrorCode::kEmptyCorpus, "no documents to model");
  }
  if (options.k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be >= 2");
  if (options.iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  }
  const double alpha = options.alpha > 0 ? options.alpha : 1.0 / options.k;
  const double beta = options.beta > 0 ? options.beta : 1.0 / options.k;
  GibbsSampler sampler(corpus, options.k, alpha, beta, options.seed);
  for (int it = 0; it < options.iterations; ++it) sampler.Sweep();
  TopicModel model = sampler.Estimate();
  if (corpus.vocab.size() < static_cast<std::size_t>(options.k)) {
    model.warnings.push_back("VocabTooSmall: " +
                             std::to_string(corpus.vocab.size()) +
                             " terms for k=" + std::to_string(options.k));
  }
  return model;
}

double EuclideanDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::vector<int> Dbscan(std::span<const Point> points, double eps,
                        int min_pts) {
  if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be > 0");
  if (min_pts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_pts must be >= 1");
  }
  const std::size_t n = points.size();
  auto region = [&](std::size_t p) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n; ++q) {
      if (EuclideanDistance(points[p], points[q]) <= eps) out.push_back(q);
    }
    return out;
  };

  constexpr int kUnvisited = -2;
  std::vector<int> labels(n, kUnvisited);
  int next_cluster = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (labels[p] != kUnvisited) continue;
    const auto neighbors = region(p);
    if (neighbors.size() < static_cast<std::size_t>(min_pts)) {
      labels[p] = kNoise;
      continue;
    }
    const int cluster = next_cluster++;
    labels[p] = cluster;
    std::deque<std::size_t> seeds(neighbors.begin(), neighbors.end());
    while (!seeds.empty()) {
      const std::size_t q = seeds.front();
      seeds.pop_front();
      if (labels[q] == kNoise) labels[q] = cluster;  // border point
      if (labels[q] != kUnvisited) continue;
      labels[q] = cluster;
      const auto expansion = region(q);
      if (expansion.size() >= static_cast<std::size_t>(min_pts)) {
        seeds.insert(seeds.end(), expansion.begin(), expansion.end());
      }
    }
  }
  return labels;
}

double EstimateEps(std::span<const Point> points) {
  constexpr std::size_t kNeighbors = 4;
  const std::size_t n = points.size();
  if (n < 2) return 1e-6;
  const std::size_t kth = std::min(kNeighbors, n - 1);
  std::vector<double> kdist(n);
  std::vector<double> dists;
  for (std::size_t p = 0; p < n; ++p) {
    dists.clear();
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) dists.push_back(EuclideanDistance(points[p], points[q]));
    }
    std::nth_element(dists.begin(), dists.begin() + (kth - 1), dists.end());
    kdist[p] = dists[kth - 1];
  }
  std::sort(kdist.begin(), kdist.end());
  const double lo = kdist.front();
  const double hi = kdist.back();
  double eps = hi;
  if (hi > lo && n > 2) {
    // Farthest point from the chord in the unit square.
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(n - 1);
      const double y = (kdist[i] - lo) / (hi - lo);
      const double gap = x - y;  // chord is y = x
      if (gap > best) {
        best = gap;
        eps = kdist[i];
      }
    }
  }
  return eps > 0 ? eps : 1e-6;
}

std::size_t Medoid(std::span<const Point> points,
                   std::span<const std::size_t> members) {
  if (members.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "medoid of an empty cluster");
  }
  std::size_t best = members.front();
  double best_sum = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> order(members.begin(), members.end());
  std::sort(order.begin(), order.end());
  for (std::size_t m : order) {
    double sum = 0.0;
    for (std::size_t x : members) sum += EuclideanDistance(points[x], points[m]);
    if (sum < best_sum) {
      best_sum = sum;
      best = m;
    }
  }
  return best;
}

std::map<int, std::size_t> ComputeMedoids(std::span<const Point> points,
                                          std::span<const int> labels) {
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kNoise) members[labels[i]].push_back(i);
  }
  std::map<int, std::size_t> medoids;
  for (const auto &[c, m] : members) medoids[c] = Medoid(points, m);
  return medoids;
}

std::map<int, double> ClusterSeparation(
    std::span<const Point> points, std::span<const int> labels,
    const std::map<int, std::size_t> &medoids) {
  if (medoids.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "separation needs at least two clusters");
  }
  std::map<int, double> intra_sum;
  std::map<int, int> size;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kNoise) continue;
    const auto it = medoids.find(labels[i]);
    if (it == medoids.end()) continue;
    intra_sum[labels[i]] += EuclideanDistance(points[i], points[it->second]);
    ++size[labels[i]];
  }
  std::map<int, double> ratios;
  const double others = static_cast<double>(medoids.size() - 1);
  for (const auto &[c, m] : medoids) {
    double inter = 0.0;
    for (const auto &[c2, m2] : medoids) {
      if (c2 != c) inter += EuclideanDistance(points[m], points[m2]);
    }
    inter /= others;
    if (!(inter > 0)) {
      throw Error(ErrorCode::kDegenerateDenominator,
                  "cluster " + std::to_string(c) +
                      " medoid coincides with every other medoid");
    }
    const double intra = size[c] > 0 ? intra_sum[c] / size[c] : 0.0;
    ratios[c] = intra / inter;
  }
  return ratios;
}

std::vector<int> AssignTopics(std::span<const int> labels,
                              const std::map<int, std::size_t> &medoids,
                              std::span<const Point> points) {
  std::vector<int> out(labels.begin(), labels.end());
  if (medoids.empty()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] != kNoise) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const auto &[c, m] : medoids) {  // ascending cluster id
      const double d = EuclideanDistance(points[i], points[m]);
      if (d < best) {
        best = d;
        out[i] = c;
      }
    }
  }
  return out;
}

std::vector<std::string> TopTerms(const TopicModel &model,
                                  std::span<const std::string> vocab,
                                  std::span<const std::size_t> members,
                                  std::size_t m) {
  if (m == 0 || vocab.empty() || model.k == 0) return {};
  std::vector<double> weight(model.k, 0.0);
  for (std::size_t d : members) {
    for (int t = 0; t < model.k; ++t) weight[t] += model.doc_topic[d][t];
  }
  if (!members.empty()) {
    for (double &w : weight) w /= static_cast<double>(members.size());
  }
  const double threshold = 1.0 / model.k;
  double kept = 0.0;
  for (int t = 0; t < model.k; ++t) {
    if (weight[t] >= threshold) kept += weight[t];
  }
  std::vector<double> score(vocab.size(), 0.0);
  for (int t = 0; t < model.k; ++t) {
    if (kept > 0 && weight[t] < threshold) continue;
    for (std::size_t w = 0; w < vocab.size(); ++w) {
      score[w] += weight[t] * model.topic_term[t][w];
    }
  }
  std::vector<std::size_t> order(vocab.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return vocab[a] < vocab[b];
  });
  order.resize(std::min(m, order.size()));
  std::vector<std::string> terms;
  for (std::size_t w : order) terms.push_back(vocab[w]);
  return terms;
}

TopicClustering ClusterDocuments(std::span<const Point> doc_topic, double eps,
                                 int min_pts) {
  TopicClustering c;
  c.min_pts = min_pts;
  c.eps = eps > 0 ? eps : EstimateEps(doc_topic);
  c.dbscan_labels = Dbscan(doc_topic, c.eps, min_pts);
  bool any_cluster = std::any_of(c.dbscan_labels.begin(),
                                 c.dbscan_labels.end(),
                                 [](int l) { return l != kNoise; });
  if (!any_cluster) {
    c.warnings.push_back("no dense cluster; all documents form cluster 0");
    c.dbscan_labels.assign(doc_topic.size(), 0);
  }
  c.medoids = ComputeMedoids(doc_topic, c.dbscan_labels);
  if (c.medoids.size() >= 2) {
    try {
      c.i_ci = ClusterSeparation(doc_topic, c.dbscan_labels, c.medoids);
    } catch (const Error &e) {
      c.warnings.push_back(e.what());
    }
  } else {
    c.warnings.push_back("fewer than two clusters; separation undefined");
  }
  c.labels = AssignTopics(c.dbscan_labels, c.medoids, doc_topic);
  return c;
}

LanguageTopics RunTopics(const std::string &lang,
                         const BagOfWordsCorpus &corpus,
                         const TopicOptions &options) {
  LanguageTopics out;
  out.lang = lang;
  out.doc_ids = corpus.doc_ids;
  out.model = FitLda(corpus, options.lda);
  out.clustering =
      ClusterDocuments(out.model.doc_topic, options.eps, options.min_pts);
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t d = 0; d < out.clustering.labels.size(); ++d) {
    members[out.clustering.labels[d]].push_back(d);
  }
  for (const auto &[cluster, docs] : members) {
    out.top_terms[cluster] =
        TopTerms(out.model, corpus.vocab, docs, options.top_terms);
  }
  return out;
}

void WriteTopicsJson(std::span<const LanguageTopics> topics,
                     std::ostream &out) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json langs = nlohmann::ordered_json::object();
  for (const LanguageTopics &t : topics) {
    nlohmann::ordered_json j;
    j["k"] = t.model.k;
    j["alpha"] = t.model.alpha;
    j["beta"] = t.model.beta;
    j["iterations"] = t.model.iterations;
    j["seed"] = t.model.seed;
    j["eps"] = t.clustering.eps;
    j["min_pts"] = t.clustering.min_pts;
    j["n_clusters"] = t.clustering.medoids.size();
    j["n_noise"] = std::count(t.clustering.dbscan_labels.begin(),
                              t.clustering.dbscan_labels.end(), kNoise);
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (std::size_t d = 0; d < t.doc_ids.size(); ++d) {
      labels[t.doc_ids[d]] = t.clustering.labels[d];
    }
    j["labels"] = std::move(labels);
    nlohmann::ordered_json medoids = nlohmann::ordered_json::object();
    for (const auto &[c, m] : t.clustering.medoids) {
      medoids[std::to_string(c)] = t.doc_ids[m];
    }
    j["medoids"] = std::move(medoids);
    nlohmann::ordered_json ici = nlohmann::ordered_json::object();
    for (const auto &[c, v] : t.clustering.i_ci) ici[std::to_string(c)] = v;
    j["i_ci"] = std::move(ici);
    nlohmann::ordered_json terms = nlohmann::ordered_json::object();
    for (const auto &[c, list] : t.top_terms) terms[std::to_string(c)] = list;
    j["top_terms"] = std::move(terms);
    std::vector<std::string> warnings = t.model.warnings;
    warnings.insert(warnings.end(), t.clustering.warnings.begin(),
                    t.clustering.warnings.end());
    j["warnings"] = warnings;
    langs[t.lang] = std::move(j);
  }
  root["languages"] = std::move(langs);
  out << root.dump(2) << '\n';
}

std::map<std::pair<std::string, std::string>, int> ReadTopicLabels(
    std::istream &in) {
  std::map<std::pair<std::string, std::string>, int> labels;
  try {
    const auto root = nlohmann::json::parse(in);
    for (const auto &[lang, entry] : root.at("languages").items()) {
      for (const auto &[doc, label] : entry.at("labels").items()) {
        const auto colon = doc.find(':');
        if (colon == std::string::npos) {
          labels[{lang, doc}] = label.get<int>();
        } else {
          labels[{doc.substr(0, colon), doc.substr(colon + 1)}] =
              label.get<int>();
        }
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kMalformedInput, std::string("topics: ") + e.what());
  }
  return labels;
}

std::vector<InterestProfile> InterestLevels(
    std::span<const ArticleEditSession> sessions,
    const std::map<std::pair<std::string, std::string>, int> &article_labels,
    std::size_t *unlabeled) {
  std::map<std::pair<std::string, std::string>, InterestProfile> profiles;
  std::size_t missing = 0;
  for (const ArticleEditSession &s : sessions) {
    const auto it = article_labels.find({s.lang, s.article_id});
    if (it == article_labels.end()) {
      ++missing;
      continue;
    }
    InterestProfile &p = profiles[{s.editor_id, s.lang}];
    p.editor_id = s.editor_id;
    p.lang = s.lang;
    ++p.session_counts[it->second];
    ++p.total_sessions;
  }
  if (unlabeled != nullptr) *unlabeled = missing;
  std::vector<InterestProfile> out;
  for (auto &[key, p] : profiles) {
    for (const auto &[topic, count] : p.session_counts) {
      p.proportions[topic] =
          static_cast<double>(count) / static_cast<double>(p.total_sessions);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace editlens
