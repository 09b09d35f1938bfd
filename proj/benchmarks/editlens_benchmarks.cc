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


#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "editlens/random.h"
#include "editlens/sessions.h"
#include "editlens/topics.h"
#include "editlens/wikitext.h"

namespace editlens {
namespace {

void BM_BuildSessions(benchmark::State &state) {
  Rng rng(1);
  std::vector<EditRecord> records;
  int64_t ts = 0;
  for (int i = 0; i < state.range(0); ++i) {
    ts += static_cast<int64_t>(UniformIndex(rng, 7200));
    EditRecord r;
    r.editor_id = "e" + std::to_string(UniformIndex(rng, 100));
    r.lang = UniformIndex(rng, 2) ? "en" : "de";
    r.article_id = "a" + std::to_string(UniformIndex(rng, 50));
    r.timestamp = ts;
    r.revision_id = std::to_string(i);
    records.push_back(r);
  }
  for (auto _ : state) benchmark::DoNotOptimize(BuildSessions(records));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSessions)->Range(1 << 10, 1 << 16);

void BM_DiffTokens(benchmark::State &state) {
  Rng rng(2);
  std::vector<std::string> pre(static_cast<std::size_t>(state.range(0)));
  for (auto &t : pre) t = "w" + std::to_string(UniformIndex(rng, 200));
  auto post = pre;
  for (std::size_t i = 0; i < post.size(); i += 10) {
    post[i] = "w" + std::to_string(UniformIndex(rng, 200));
  }
  for (auto _ : state) benchmark::DoNotOptimize(DiffTokens(pre, post));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DiffTokens)->Range(16, 1024);

void BM_GibbsSweep(benchmark::State &state) {
  Rng rng(3);
  std::map<std::string, std::map<std::string, int>> docs;
  for (int d = 0; d < 500; ++d) {
    for (int i = 0; i < 100; ++i) {
      ++docs["d" + std::to_string(d)]["t" + std::to_string(UniformIndex(rng, 2000))];
    }
  }
  const BagOfWordsCorpus corpus = MakeCorpus(docs);
  GibbsSampler sampler(corpus, static_cast<int>(state.range(0)), 0.1, 0.01, 4);
  for (auto _ : state) sampler.Sweep();
}
BENCHMARK(BM_GibbsSweep)->Arg(5)->Arg(20)->Arg(50);

void BM_Dbscan(benchmark::State &state) {
  Rng rng(5);
  std::vector<Point> pts(static_cast<std::size_t>(state.range(0)), Point(10));
  for (auto &p : pts) {
    for (double &v : p) v = UniformDouble(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(Dbscan(pts, 0.5, 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Dbscan)->Range(128, 4096);

}  // namespace
}  // namespace editlens

BENCHMARK_MAIN();
