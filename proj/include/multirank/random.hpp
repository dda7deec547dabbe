// Copyright 2026 The Multirank Authors.
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

#ifndef MULTIRANK_RANDOM_HPP_
#define MULTIRANK_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace multirank {

// Seedable random source, version 1.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so the
// transforms below are spelled out to keep every draw identical across
// toolchains.
//
// Stream splitting: the stream for (base, a, b) is seeded with
// SplitMix64(SplitMix64(SplitMix64(base) ^ a) ^ b). The benchmark uses
// a = cell index and b = instance index.
class Rng {
 public:
  static constexpr int kVersion = 1;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng ForStream(std::uint64_t base, std::uint64_t a, std::uint64_t b);

  static std::uint64_t SplitMix64(std::uint64_t x);

  std::uint64_t NextBits() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double Uniform() {
    return (static_cast<double>(NextBits() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform on (lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t UniformIndex(std::uint64_t n);

  bool Bernoulli(double p) { return Uniform() < p; }

  // Standard normal via Box-Muller; consumes two draws per call.
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace multirank

#endif  // MULTIRANK_RANDOM_HPP_
