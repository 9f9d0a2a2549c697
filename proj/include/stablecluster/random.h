// Copyright 2026 The StableCluster Authors.
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

#ifndef STABLECLUSTER_RANDOM_H_
#define STABLECLUSTER_RANDOM_H_

#include <cstdint>
#include <random>

namespace stablecluster {

// SplitMix64 finalizer. Used to derive independent, order-free seeds for
// numbered streams (probe trials, generator retries).
inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(seed ^ SplitMix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform double in [0, 1) with 53 random bits. Unlike
// std::uniform_real_distribution the result is identical across standard
// library implementations.
inline double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double UniformIn(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * UniformUnit(rng);
}

// Uniform integer in [0, bound). Slight modulo bias is irrelevant for
// instance generation.
inline std::size_t UniformIndex(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

}  // namespace stablecluster

#endif  // STABLECLUSTER_RANDOM_H_
