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

#ifndef EDITLENS_TOPICS_H_
#define EDITLENS_TOPICS_H_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "editlens/random.h"
#include "editlens/sessions.h"

namespace editlens {

// Documents as sparse term counts. Vocabulary ids follow sorted term order
// and documents are sorted by id, so the corpus does not depend on the row
// order of the input file.
struct BagOfWordsCorpus {
  std::vector<std::string> doc_ids;
  std::vector<std::string> vocab;
  std::vector<std::vector<std::pair<int, int>>> docs;  // (term id, count)

  std::size_t num_tokens() const;
};

// TSV rows: doc_id \t term \t count. Repeated (doc, term) rows add up.
BagOfWordsCorpus ReadBagOfWords(std::istream &in);
void WriteBagOfWords(const BagOfWordsCorpus &corpus, std::ostream &out);
BagOfWordsCorpus MakeCorpus(
    const std::map<std::string, std::map<std::string, int>> &doc_terms);

// Splits "lang:article" document ids by edition; ids without a ':' go to
// edition "".
std::map<std::string, BagOfWordsCorpus> SplitCorpusByLanguage(
    const BagOfWordsCorpus &corpus);

struct LdaOptions {
  int k = 20;
  double alpha = 0;  // <= 0 selects 1/k
  double beta = 0;   // <= 0 selects 1/k
  int iterations = 2000;
  uint64_t seed = 7;
};

struct TopicModel {
  int k = 0;
  double alpha = 0;
  double beta = 0;
  int iterations = 0;
  uint64_t seed = 0;
  std::vector<std::vector<double>> doc_topic;   // docs x k
  std::vector<std::vector<double>> topic_term;  // k x vocab
  std::vector<std::string> warnings;
};

// Collapsed Gibbs sampler for LDA. Sweeps are sequential so a fit is
// bit-reproducible for a fixed seed.
class GibbsSampler {
 public:
  GibbsSampler(const BagOfWordsCorpus &corpus, int k, double alpha,
               double beta, uint64_t seed);

  void Sweep();
  int sweeps() const { return sweeps_; }

  // Smoothed estimates from the current counts.
  TopicModel Estimate() const;

  // Checks that the count tables agree with the topic assignments and that
  // each document's topic counts add up to its length.
  bool CountsConsistent() const;

 private:
  int k_;
  int vocab_size_;
  double alpha_;
  double beta_;
  uint64_t seed_;
  Rng rng_;
  int sweeps_ = 0;
  std::vector<std::vector<int>> words_;   // per doc token term ids
  std::vector<std::vector<int>> topics_;  // per doc token assignments
  std::vector<std::vector<int>> doc_topic_;
  std::vector<std::vector<int>> topic_term_;
  std::vector<int> topic_total_;
  std::vector<double> weights_;
};

// Throws Error(kEmptyCorpus) for no documents or no tokens and
// Error(kInvalidArgument) for k < 2. A vocabulary smaller than k only adds
// a warning to the model.
TopicModel FitLda(const BagOfWordsCorpus &corpus, const LdaOptions &options);

using Point = std::vector<double>;

double EuclideanDistance(std::span<const double> a, std::span<const double> b);

inline constexpr int kNoise = -1;

// DBSCAN with Euclidean distance. A point is core when at least `min_pts`
// points (itself included) lie within `eps`. Clusters are numbered in the
// order they are discovered scanning points by index; a border point
// reachable from several clusters joins the first. Non-members get kNoise.
std::vector<int> Dbscan(std::span<const Point> points, double eps,
                        int min_pts);

// eps from the sorted 4-nearest-neighbor distance curve, at the point
// farthest from the chord joining its ends.
double EstimateEps(std::span<const Point> points);

// Member minimizing the summed distance to all members; ties go to the
// lowest index. `members` must be non-empty.
std::size_t Medoid(std::span<const Point> points,
                   std::span<const std::size_t> members);

// Medoid per cluster id (kNoise ignored).
std::map<int, std::size_t> ComputeMedoids(std::span<const Point> points,
                                          std::span<const int> labels);

// Ratio of mean member-to-medoid distance to mean distance from the medoid
// to the other medoids. Needs at least two clusters; throws
// Error(kDegenerateDenominator) when a cluster's medoid coincides with all
// other medoids.
std::map<int, double> ClusterSeparation(std::span<const Point> points,
                                        std::span<const int> labels,
                                        const std::map<int, std::size_t> &medoids);

// Gives each noise point the cluster of its nearest medoid (ties to the
// lowest cluster id).
std::vector<int> AssignTopics(std::span<const int> labels,
                              const std::map<int, std::size_t> &medoids,
                              std::span<const Point> points);

// The m most probable terms of a cluster under the mixture of its dominant
// topics: topics whose mean weight over the members is at least 1/k.
std::vector<std::string> TopTerms(const TopicModel &model,
                                  std::span<const std::string> vocab,
                                  std::span<const std::size_t> members,
                                  std::size_t m);

struct TopicClustering {
  std::vector<int> dbscan_labels;  // may contain kNoise
  std::vector<int> labels;         // total labeling
  std::map<int, std::size_t> medoids;
  std::map<int, double> i_ci;
  double eps = 0;
  int min_pts = 0;
  std::vector<std::string> warnings;
};

// DBSCAN, medoids, separation and noise assignment. eps <= 0 selects
// EstimateEps. When DBSCAN finds no cluster every document joins cluster 0.
TopicClustering ClusterDocuments(std::span<const Point> doc_topic, double eps,
                                 int min_pts);

struct LanguageTopics {
  std::string lang;
  std::vector<std::string> doc_ids;
  TopicModel model;
  TopicClustering clustering;
  std::map<int, std::vector<std::string>> top_terms;
};

struct TopicOptions {
  LdaOptions lda;
  double eps = 0;  // <= 0 selects EstimateEps
  int min_pts = 5;
  std::size_t top_terms = 10;
};

LanguageTopics RunTopics(const std::string &lang,
                         const BagOfWordsCorpus &corpus,
                         const TopicOptions &options);

// topics.json, keyed by edition.
void WriteTopicsJson(std::span<const LanguageTopics> topics, std::ostream &out);

// (lang, article) -> topic label, from topics.json. Document ids of the
// form "lang:article" are split; other ids use the edition key.
std::map<std::pair<std::string, std::string>, int> ReadTopicLabels(
    std::istream &in);

struct InterestProfile {
  std::string editor_id;
  std::string lang;
  std::map<int, int64_t> session_counts;
  std::map<int, double> proportions;
  int64_t total_sessions = 0;
};

// Topic shares of each (editor, lang)'s sessions. Sessions whose article
// has no label are skipped and counted in `unlabeled` when given.
std::vector<InterestProfile> InterestLevels(
    std::span<const ArticleEditSession> sessions,
    const std::map<std::pair<std::string, std::string>, int> &article_labels,
    std::size_t *unlabeled = nullptr);

}  // namespace editlens

#endif  // EDITLENS_TOPICS_H_
