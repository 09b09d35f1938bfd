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

#ifndef EDITLENS_RANDOM_H_
#define EDITLENS_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace editlens {

// Every random decision in the pipeline draws from a generator seeded by
// SubSeed(config_seed, "<stream name>"). mt19937_64 output is fully
// specified by the standard; the helpers below avoid the
// implementation-defined <random> distributions so results are identical
// across standard libraries.
using Rng = std::mt19937_64;

uint64_t Fnv1a64(std::string_view data, uint64_t basis = 14695981039346656037ULL);
uint64_t SplitMix64(uint64_t x);
uint64_t SubSeed(uint64_t seed, std::string_view stream);

// Uniform in [0, 1) with 53 random bits.
double UniformDouble(Rng &rng);

// Uniform in [0, n). n must be positive.
uint64_t UniformIndex(Rng &rng, uint64_t n);

// Standard normal via Box-Muller.
double StandardNormal(Rng &rng);

}  // namespace editlens

#endif  // EDITLENS_RANDOM_H_
