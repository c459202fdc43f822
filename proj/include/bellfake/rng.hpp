// Copyright 2026 The bellfake Authors
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

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace bellfake {

//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based generator.
 *
 * Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
 * The 64-bit key is the run seed and the upper half of the 128-bit counter
 * selects an independent stream, so stream `i` of seed `s` is a pure function
 * of (s, i). Satisfies UniformRandomBitGenerator.
 */
class Philox4x32 {
  public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    //! The bare 10-round bijection.
    static Block encrypt(Block counter, Key key) noexcept;

    result_type operator()() noexcept {
        if (cursor_ == 2) {
            refill();
        }
        auto const* w = buffer_.data() + 2 * cursor_++;
        return static_cast<std::uint64_t>(w[0]) | (static_cast<std::uint64_t>(w[1]) << 32);
    }

    //! Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    //! True with probability p; p outside (0, 1) consumes no draw.
    bool bernoulli(double p) noexcept {
        if (p <= 0.0) {
            return false;
        }
        if (p >= 1.0) {
            return true;
        }
        return uniform() < p;
    }

    //! Fair coin.
    bool coin() noexcept { return ((*this)() >> 63) != 0; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

  private:
    void refill() noexcept;

    Key key_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    Block buffer_{};
    int cursor_ = 2;
};

using Rng = Philox4x32;

//! SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

//! Seed for the index-th child of a parent seed (used for sweep grid points).
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
    return mix64(parent ^ mix64(index));
}

}  // namespace bellfake
