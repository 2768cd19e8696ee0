// Copyright 2026 The bougerol Authors
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

#ifndef BOUGEROL_RNG_HPP_
#define BOUGEROL_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace bougerol {

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Address of one random stream. Distinct (master_seed, scenario_id,
// batch_index) triples map to disjoint counter blocks of a keyed
// counter-based generator, so streams never overlap by construction and
// batches can be drawn in any order or in parallel.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::string scenario_id;
  std::uint64_t batch_index = 0;
  std::uint64_t draw_counter = 0;
};

// Philox4x32-10 block cipher (Salmon et al., SC 2011): the key selects the
// stream family, the 128-bit counter indexes blocks within it.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block encrypt(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      counter = one_round(counter, key);
    }
    return counter;
  }

 private:
  static Block one_round(const Block& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

// Sequential view of the stream addressed by a StreamKey. Identical keys
// give bit-identical sequences; the state is tiny and cheap to copy.
class RandomStream {
 public:
  explicit RandomStream(const StreamKey& key)
      : batch_(key.batch_index), block_(key.draw_counter) {
    const std::uint64_t k64 =
        detail::mix64(key.master_seed ^ detail::mix64(detail::fnv1a64(key.scenario_id)));
    key_ = {static_cast<std::uint32_t>(k64), static_cast<std::uint32_t>(k64 >> 32)};
  }

  std::uint64_t next_u64() {
    if (buffered_ == 0) refill();
    return buffer_[--buffered_];
  }

  // Uniform on the open interval (0, 1); never returns an endpoint, so it is
  // always safe inside log().
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired draw is cached.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

  std::uint64_t blocks_consumed() const { return block_; }

 private:
  void refill() {
    const Philox4x32::Block counter = {
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(batch_), static_cast<std::uint32_t>(batch_ >> 32)};
    const auto out = Philox4x32::encrypt(counter, key_);
    buffer_[1] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    buffer_[0] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    buffered_ = 2;
    ++block_;
  }

  Philox4x32::Key key_{};
  std::uint64_t batch_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace bougerol

#endif  // BOUGEROL_RNG_HPP_
