#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The gibbsmax Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace gibbsmax {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: output is a pure function
// of (counter, key), which is what lets every Monte Carlo sample own its own
// stream regardless of which thread evaluates it.
struct Philox4x32
{
  using Counter = std::array<std::uint32_t, 4>;
  using Key     = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static constexpr Counter generate(Counter ctr, Key key) noexcept
  {
    for (int round = 0; round < 10; ++round)
    {
      std::uint64_t const p0 = std::uint64_t{kM0} * ctr[0];
      std::uint64_t const p1 = std::uint64_t{kM1} * ctr[2];
      auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
      auto const lo0 = static_cast<std::uint32_t>(p0);
      auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
      auto const lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kW0;
      key[1] += kW1;
    }
    return ctr;
  }
};

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept
{
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives an independent seed for an auxiliary stream family.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept
{
  return splitmix64(seed ^ splitmix64(tag));
}

/// Random stream for one Monte Carlo sample: key = seed, counter = (block,
/// sample index). Copying a stream clones it exactly.
class SampleStream
{
public:
  SampleStream(std::uint64_t seed, std::uint64_t sample_index) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}
    , sample_(sample_index)
  {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept
  {
    if (cursor_ >= 4)
    {
      refill();
    }
    std::uint32_t const a = buffer_[cursor_++];
    std::uint32_t const b = buffer_[cursor_++];
    std::uint64_t const bits = (std::uint64_t{a >> 5} << 26) | std::uint64_t{b >> 6};
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second variate of each pair is kept.
  double normal() noexcept
  {
    if (has_spare_)
    {
      has_spare_ = false;
      return spare_;
    }
    double const u1     = uniform();
    double const u2     = uniform();
    double const radius = std::sqrt(-2.0 * std::log(u1));
    double const angle  = 2.0 * std::numbers::pi * u2;
    spare_              = radius * std::sin(angle);
    has_spare_          = true;
    return radius * std::cos(angle);
  }

  void fill_normal(std::span<double> out) noexcept
  {
    for (double &v : out)
    {
      v = normal();
    }
  }

private:
  void refill() noexcept
  {
    Philox4x32::Counter const ctr{static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(sample_),
                                  static_cast<std::uint32_t>(sample_ >> 32)};
    buffer_ = Philox4x32::generate(ctr, key_);
    ++block_;
    cursor_ = 0;
  }

  Philox4x32::Key     key_;
  std::uint64_t       sample_;
  std::uint64_t       block_ = 0;
  Philox4x32::Counter buffer_{};
  unsigned            cursor_    = 4;
  double              spare_     = 0.0;
  bool                has_spare_ = false;
};

}  // namespace gibbsmax
