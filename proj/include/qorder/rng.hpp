#pragma once

// Philox4x32-10 (Salmon et al., SC'11), a counter-based generator. A walk
// owns the key (seed) and the counter prefix (walk id), so any worker can
// produce the bits of any walk without shared state.

#include <array>
#include <cstdint>

namespace qorder {

class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57;
  static constexpr std::uint32_t kW0 = 0x9E3779B9;
  static constexpr std::uint32_t kW1 = 0xBB67AE85;
};

// Bit stream of walk `stream` under `seed`: block j is Philox at counter
// (stream, j), consumed 32 bits at a time from the low word.
class BitStream {
 public:
  BitStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(stream)),
        stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

  int bit() {
    if (left_ == 0) refill();
    const int b = static_cast<int>(word_ & 1u);
    word_ >>= 1;
    --left_;
    return b;
  }

  std::uint64_t bits_used() const { return used_; }

 private:
  void refill() {
    if (lane_ == 4) {
      block_ = Philox4x32::generate({stream_lo_, stream_hi_, static_cast<std::uint32_t>(counter_),
                                     static_cast<std::uint32_t>(counter_ >> 32)},
                                    key_);
      ++counter_;
      lane_ = 0;
    }
    word_ = block_[lane_++];
    left_ = 32;
    used_ += 32;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint64_t counter_ = 0;
  Philox4x32::Block block_{};
  int lane_ = 4;
  std::uint32_t word_ = 0;
  int left_ = 0;
  std::uint64_t used_ = 0;
};

}  // namespace qorder
