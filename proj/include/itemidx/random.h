// Copyright 2026 The itemidx Authors.
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

#ifndef ITEMIDX_RANDOM_H_
#define ITEMIDX_RANDOM_H_

#include <cstdint>
#include <random>

namespace itemidx {

// Independent random streams derived from the single run seed. Every
// consumer of randomness draws from its own stream so adding a consumer
// never perturbs the others.
enum class SeedStream : std::uint64_t {
  kRandomIndex = 1,
  kUserShuffle = 2,
  kKMeans = 3,
  kLanczos = 4,
};

// splitmix64 finalizer.
inline std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t DeriveSeed(std::uint64_t seed, SeedStream stream) {
  return MixSeed(seed ^ MixSeed(static_cast<std::uint64_t>(stream)));
}

inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t salt) {
  return MixSeed(seed ^ MixSeed(salt + 0x51ed2701ULL));
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; identical across standard
// library implementations, unlike std::uniform_real_distribution.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t UniformBelow(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace itemidx

#endif  // ITEMIDX_RANDOM_H_
