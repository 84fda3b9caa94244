#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace orthohaar {

/// Counter-based random stream built on Philox4x32-10.
///
/// The 64-bit seed is the Philox key. The 128-bit counter is split into a
/// 64-bit stream index (high half) and a 64-bit block counter (low half), so
/// every (seed, stream_index) pair addresses its own gap-free sequence and
/// `split` costs O(1).
///
/// Consumption contract:
///  - next_u64 draws one 64-bit word; each Philox block yields two.
///  - next_uniform draws one word and keeps its top 53 bits.
///  - next_normal uses the Marsaglia polar method on pairs of uniforms mapped
///    to (-1,1); rejected pairs are consumed and discarded. Each accepted pair
///    produces two deviates; the second is cached and returned by the next
///    call. The cache belongs to the stream and is not shared with splits.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  /// Number of 64-bit words consumed so far.
  std::uint64_t words_consumed() const { return consumed_; }

  std::uint64_t next_u64();
  /// Uniform on [0,1) with 53 bits of precision.
  double next_uniform();
  /// Uniform on (0,1); never returns 0.
  double next_open_uniform();
  double next_normal();

  /// Independent child stream keyed by (seed, stream_index, index). Does not
  /// advance this stream.
  RngStream split(std::uint64_t index) const;

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::uint64_t consumed_ = 0;
  std::optional<double> spare_normal_;
};

/// One Philox4x32-10 block: encrypt `counter` under `key`.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Accepts decimal or 0x-prefixed hexadecimal; throws std::invalid_argument.
std::uint64_t parse_seed(std::string_view text);

}  // namespace orthohaar
