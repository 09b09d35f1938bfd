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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "editlens/error.h"
#include "editlens/random.h"
#include "oracles.h"

namespace editlens {
namespace {

// Documents 0..n/2-1 use x-words, the rest y-words.
BagOfWordsCorpus TwoTopicCorpus(int n_docs, uint64_t seed) {
  Rng rng(seed);
  std::map<std::string, std::map<std::string, int>> docs;
  for (int d = 0; d < n_docs; ++d) {
    const char prefix = d < n_docs / 2 ? 'x' : 'y';
    char id[16];
    std::snprintf(id, sizeof(id), "d%03d", d);
    for (int i = 0; i < 20; ++i) {
      ++docs[id][std::string(1, prefix) + std::to_string(1 + UniformIndex(rng, 5))];
    }
  }
  return MakeCorpus(docs);
}

std::vector<Point> Blob(Rng &rng, double cx, double cy, int n, double spread) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({cx + spread * (UniformDouble(rng) - 0.5),
                   cy + spread * (UniformDouble(rng) - 0.5)});
  }
  return out;
}

TEST(BagOfWordsTest, ReadMergesAndSplitsByLanguage) {
  std::istringstream in("en:A\tcat\t2\nen:A\tcat\t1\nde:B\thund\t4\nen:C\tdog\t1\n");
  const BagOfWordsCorpus c = ReadBagOfWords(in);
  EXPECT_EQ(c.doc_ids, (std::vector<std::string>{"de:B", "en:A", "en:C"}));
  EXPECT_EQ(c.num_tokens(), 8u);
  const auto split = SplitCorpusByLanguage(c);
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split.at("en").docs.size(), 2u);
  EXPECT_EQ(split.at("en").vocab, (std::vector<std::string>{"cat", "dog"}));
  std::istringstream bad("en:A\tcat\n");
  EXPECT_THROW(ReadBagOfWords(bad), Error);
}

TEST(LdaTest, PlantedTwoTopicsAreRecovered) {
  const BagOfWordsCorpus corpus = TwoTopicCorpus(60, 1);
  LdaOptions options;
  options.k = 2;
  options.iterations = 300;
  options.seed = 5;
  const TopicModel model = FitLda(corpus, options);
  EXPECT_DOUBLE_EQ(model.alpha, 0.5);
  EXPECT_DOUBLE_EQ(model.beta, 0.5);
  int agree = 0;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto &row = model.doc_topic[d];
    double sum = 0;
    for (double v : row) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-6);
    const int topic = row[1] > row[0];
    agree += topic == (d < 30 ? 0 : 1);
  }
  const double purity = std::max(agree, 60 - agree) / 60.0;
  EXPECT_GE(purity, 0.9);
  for (const auto &row : model.topic_term) {
    double sum = 0;
    for (double v : row) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(LdaTest, DeterministicForSeed) {
  const BagOfWordsCorpus corpus = TwoTopicCorpus(20, 2);
  LdaOptions options;
  options.k = 3;
  options.iterations = 50;
  const TopicModel a = FitLda(corpus, options);
  const TopicModel b = FitLda(corpus, options);
  EXPECT_EQ(a.doc_topic, b.doc_topic);
  EXPECT_EQ(a.topic_term, b.topic_term);
  options.seed += 1;
  EXPECT_NE(FitLda(corpus, options).doc_topic, a.doc_topic);
}

TEST(LdaTest, CountsStayConsistentEverySweep) {
  GibbsSampler sampler(TwoTopicCorpus(20, 3), 4, 0.25, 0.25, 9);
  EXPECT_TRUE(sampler.CountsConsistent());
  for (int i = 0; i < 25; ++i) {
    sampler.Sweep();
    ASSERT_TRUE(sampler.CountsConsistent()) << "sweep " << i;
  }
  EXPECT_EQ(sampler.sweeps(), 25);
}

TEST(LdaTest, ErrorsAndWarnings) {
  LdaOptions options;
  options.k = 2;
  try {
    FitLda(BagOfWordsCorpus{}, options);
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
  options.k = 1;
  EXPECT_THROW(FitLda(TwoTopicCorpus(4, 1), options), Error);
  options.k = 20;
  options.iterations = 5;
  const TopicModel m = FitLda(TwoTopicCorpus(4, 1), options);
  ASSERT_FALSE(m.warnings.empty());
  EXPECT_NE(m.warnings[0].find("VocabTooSmall"), std::string::npos);
}

TEST(DbscanTest, Examples) {
  Rng rng(1);
  auto points = Blob(rng, 0, 0, 10, 0.1);
  const auto far = Blob(rng, 10, 0, 10, 0.1);
  points.insert(points.end(), far.begin(), far.end());
  const auto labels = Dbscan(points, 1.0, 2);
  EXPECT_EQ(std::set<int>(labels.begin(), labels.end()), (std::set<int>{0, 1}));

  EXPECT_EQ(Dbscan(std::vector<Point>{{0, 0}}, 1.0, 2), std::vector<int>{kNoise});
  EXPECT_EQ(Dbscan(std::vector<Point>(5, Point{1, 1}), 0.5, 3),
            std::vector<int>(5, 0));
}

TEST(DbscanTest, MatchesQuadraticReference) {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(UniformIndex(rng, 200));
    std::vector<Point> points;
    for (int i = 0; i < n; ++i) {
      points.push_back({UniformDouble(rng), UniformDouble(rng), UniformDouble(rng)});
    }
    const double eps = 0.05 + 0.2 * UniformDouble(rng);
    const int min_pts = 1 + static_cast<int>(UniformIndex(rng, 6));
    EXPECT_TRUE(oracle::SamePartition(Dbscan(points, eps, min_pts),
                                      oracle::Dbscan(points, eps, min_pts)))
        << "trial " << trial;
  }
}

TEST(MedoidTest, Examples) {
  const std::vector<Point> pts = {{0, 0}, {1, 0}, {0, 1}};
  EXPECT_EQ(Medoid(pts, std::vector<std::size_t>{0, 1, 2}), 0u);
  EXPECT_EQ(Medoid(pts, std::vector<std::size_t>{2}), 2u);
  EXPECT_EQ(Medoid(pts, std::vector<std::size_t>{1, 2}), 1u);
  EXPECT_THROW(Medoid(pts, std::vector<std::size_t>{}), Error);
}

TEST(MedoidTest, MatchesExhaustiveSearch) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> pts;
    std::vector<std::size_t> members;
    const int n = 1 + static_cast<int>(UniformIndex(rng, 100));
    for (int i = 0; i < n; ++i) {
      pts.push_back({UniformDouble(rng), UniformDouble(rng)});
      members.push_back(static_cast<std::size_t>(i));
    }
    EXPECT_EQ(Medoid(pts, members), oracle::Medoid(pts, members));
  }
}

TEST(ClusterSeparationTest, HandCase) {
  const std::vector<Point> pts = {{0, 0}, {0, 0.2}, {10, 0}, {10, 0.2}};
  const std::vector<int> labels = {0, 0, 1, 1};
  const auto medoids = ComputeMedoids(pts, labels);
  const auto i_ci = ClusterSeparation(pts, labels, medoids);
  EXPECT_NEAR(i_ci.at(0), 0.01, 1e-12);
  EXPECT_NEAR(i_ci.at(1), 0.01, 1e-12);
}

TEST(ClusterSeparationTest, SingletonsAndDegenerateCases) {
  const std::vector<Point> pts = {{0, 0}, {3, 4}};
  const std::vector<int> labels = {0, 1};
  const auto i_ci = ClusterSeparation(pts, labels, ComputeMedoids(pts, labels));
  EXPECT_EQ(i_ci.at(0), 0.0);
  EXPECT_EQ(i_ci.at(1), 0.0);

  const std::vector<Point> same = {{1, 1}, {1, 1}};
  try {
    ClusterSeparation(same, labels, ComputeMedoids(same, labels));
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateDenominator);
  }
  EXPECT_THROW(ClusterSeparation(pts, std::vector<int>{0, 0},
                                 ComputeMedoids(pts, std::vector<int>{0, 0})),
               Error);
}

TEST(ClusterSeparationTest, DecreasesWithBlobSeparation) {
  Rng rng(8);
  const auto a = Blob(rng, 0, 0, 15, 1.0);
  const auto b0 = Blob(rng, 0, 0, 15, 1.0);
  double previous = INFINITY;
  for (int level = 1; level <= 10; ++level) {
    std::vector<Point> pts = a;
    for (const Point &p : b0) pts.push_back({p[0] + 2.0 * level, p[1]});
    std::vector<int> labels(30, 0);
    std::fill(labels.begin() + 15, labels.end(), 1);
    const double i = ClusterSeparation(pts, labels, ComputeMedoids(pts, labels)).at(0);
    EXPECT_LT(i, previous) << "level " << level;
    previous = i;
  }
}

TEST(AssignTopicsTest, NearestMedoidWithLowestIdTies) {
  const std::vector<Point> pts = {{0, 0}, {10, 0}, {2, 0}, {5, 0}};
  const std::vector<int> labels = {0, 1, kNoise, kNoise};
  const std::map<int, std::size_t> medoids = {{0, 0}, {1, 1}};
  EXPECT_EQ(AssignTopics(labels, medoids, pts), (std::vector<int>{0, 1, 0, 0}));
  const std::vector<int> clean = {0, 1, 0, 1};
  EXPECT_EQ(AssignTopics(clean, medoids, pts), clean);
}

TEST(ClusterDocumentsTest, AutoEpsFindsBlobs) {
  Rng rng(21);
  auto pts = Blob(rng, 0, 0, 20, 0.05);
  const auto far = Blob(rng, 1, 1, 20, 0.05);
  pts.insert(pts.end(), far.begin(), far.end());
  // Sparse background documents give the k-distance curve its elbow.
  const auto background = Blob(rng, 0.5, 0.5, 6, 1.5);
  pts.insert(pts.end(), background.begin(), background.end());
  const TopicClustering c = ClusterDocuments(pts, 0, 4);
  EXPECT_GT(c.eps, 0);
  EXPECT_EQ(c.medoids.size(), 2u);
  for (int l : c.labels) EXPECT_NE(l, kNoise);
  EXPECT_EQ(c.labels.size(), pts.size());
}

TEST(ClusterDocumentsTest, NoClustersFallsBackToOneTopic) {
  const std::vector<Point> pts = {{0, 0}, {5, 5}, {9, 1}};
  const TopicClustering c = ClusterDocuments(pts, 0.1, 3);
  EXPECT_EQ(c.labels, (std::vector<int>{0, 0, 0}));
  EXPECT_FALSE(c.warnings.empty());
}

TEST(TopTermsTest, PlantedVocabularyAndEdgeCases) {
  const BagOfWordsCorpus corpus = TwoTopicCorpus(40, 4);
  LdaOptions options;
  options.k = 2;
  options.iterations = 200;
  const TopicModel model = FitLda(corpus, options);
  std::vector<std::size_t> xs, ys;
  for (std::size_t d = 0; d < 40; ++d) (d < 20 ? xs : ys).push_back(d);
  for (const std::string &t : TopTerms(model, corpus.vocab, xs, 3)) EXPECT_EQ(t[0], 'x');
  for (const std::string &t : TopTerms(model, corpus.vocab, ys, 3)) EXPECT_EQ(t[0], 'y');
  EXPECT_TRUE(TopTerms(model, corpus.vocab, xs, 0).empty());
  const auto all = TopTerms(model, corpus.vocab, xs, 100);
  EXPECT_EQ(all.size(), corpus.vocab.size());
}

ArticleEditSession Visit(const std::string &editor, const std::string &article,
                         int64_t ts) {
  ArticleEditSession s;
  s.editor_id = editor;
  s.lang = "en";
  s.article_id = article;
  s.start_ts = s.end_ts = ts;
  return s;
}

TEST(InterestLevelsTest, ProportionsAndScaleInvariance) {
  const std::map<std::pair<std::string, std::string>, int> labels = {
      {{"en", "A"}, 1}, {{"en", "B"}, 2}, {{"en", "C"}, 3}};
  std::vector<ArticleEditSession> sessions = {
      Visit("u", "A", 0), Visit("u", "A", 1), Visit("u", "B", 2),
      Visit("u", "C", 3), Visit("v", "B", 0), Visit("v", "Z", 1)};
  std::size_t unlabeled = 0;
  auto profiles = InterestLevels(sessions, labels, &unlabeled);
  ASSERT_EQ(profiles.size(), 2u);
  EXPECT_DOUBLE_EQ(profiles[0].proportions.at(1), 0.5);
  EXPECT_DOUBLE_EQ(profiles[0].proportions.at(2), 0.25);
  EXPECT_DOUBLE_EQ(profiles[0].proportions.at(3), 0.25);
  EXPECT_DOUBLE_EQ(profiles[1].proportions.at(2), 1.0);
  EXPECT_EQ(unlabeled, 1u);

  auto doubled = sessions;
  doubled.insert(doubled.end(), sessions.begin(), sessions.end());
  const auto again = InterestLevels(doubled, labels);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    EXPECT_EQ(again[i].proportions, profiles[i].proportions);
  }
}

TEST(TopicsJsonTest, LabelsRoundTrip) {
  const BagOfWordsCorpus corpus = TwoTopicCorpus(30, 6);
  std::map<std::string, std::map<std::string, int>> docs;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    for (auto [term, count] : corpus.docs[d]) {
      docs["en:" + corpus.doc_ids[d]][corpus.vocab[static_cast<std::size_t>(term)]] = count;
    }
  }
  TopicOptions options;
  options.lda.k = 2;
  options.lda.iterations = 100;
  options.min_pts = 3;
  const LanguageTopics t = RunTopics("en", MakeCorpus(docs), options);
  std::stringstream buf;
  WriteTopicsJson(std::vector{t}, buf);
  const auto labels = ReadTopicLabels(buf);
  ASSERT_EQ(labels.size(), 30u);
  for (std::size_t d = 0; d < t.doc_ids.size(); ++d) {
    const std::string article = t.doc_ids[d].substr(3);
    EXPECT_EQ(labels.at({"en", article}), t.clustering.labels[d]);
  }
}

}  // namespace
}  // namespace editlens
