// Copyright 2026 The remccl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace remccl {

/// xorshift64* (Vigna 2016). Fixed 64-bit integer semantics, so sequences are
/// identical on every platform.
///
///   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
///   output = x * 0x2545F4914F6CDD1D  (mod 2^64)
///
/// The state is seeded as seed ^ 0x9E3779B97F4A7C15, replaced by
/// 0x9E3779B97F4A7C15 itself if that yields 0.
class Xorshift64Star {
 public:
  static constexpr std::uint64_t kSeedMix = 0x9E3779B97F4A7C15ULL;

  explicit constexpr Xorshift64Star(std::uint64_t seed) noexcept
      : state_(seed ^ kSeedMix) {
    if (state_ == 0) state_ = kSeedMix;
  }

  constexpr std::uint64_t next() noexcept {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Integer in [0, bound) by modulo; bound must be > 0. The modulo bias is
  /// below 2^-32 for bounds under 2^32.
  constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
    return next() % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace remccl
