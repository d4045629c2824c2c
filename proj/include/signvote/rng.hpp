#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace signvote {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3"). Stateless: maps (counter, key) to 128 random bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// A random stream addressed by (master_seed, worker_id, step, substream).
//
// The seed is the Philox key; worker, step and substream occupy three of the
// four counter words and the fourth counts blocks within the stream. Two
// streams with equal coordinates therefore yield equal sequences no matter
// which thread draws from them or in what order streams are consumed.
//
// Satisfies UniformRandomBitGenerator (64-bit results).
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint32_t worker_id, std::uint32_t step, std::uint32_t substream);

  std::uint64_t master_seed() const { return seed_; }
  std::uint32_t worker_id() const { return worker_; }
  std::uint32_t step() const { return step_; }
  std::uint32_t substream() const { return substream_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open();
  // Standard normal via Box-Muller; both variates of a pair are used.
  double normal();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint32_t worker_;
  std::uint32_t step_;
  std::uint32_t substream_;
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

inline RngStream derive_stream(std::uint64_t master_seed, std::uint32_t worker_id, std::uint32_t step,
                               std::uint32_t substream) {
  return RngStream(master_seed, worker_id, step, substream);
}

// SplitMix64 finalizer; used to derive per-repeat seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace signvote
