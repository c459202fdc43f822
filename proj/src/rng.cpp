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

#include "bellfake/rng.hpp"

namespace bellfake {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round(Philox4x32::Block& c, const Philox4x32::Key& k) noexcept {
    std::uint64_t const p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    std::uint64_t const p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
    auto const lo0 = static_cast<std::uint32_t>(p0);
    auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
    auto const lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

Philox4x32::Block Philox4x32::encrypt(Block counter, Key key) noexcept {
    round(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        round(counter, key);
    }
    return counter;
}

void Philox4x32::refill() noexcept {
    Block const ctr{static_cast<std::uint32_t>(block_index_),
                    static_cast<std::uint32_t>(block_index_ >> 32),
                    static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = encrypt(ctr, key_);
    ++block_index_;
    cursor_ = 0;
}

}  // namespace bellfake
