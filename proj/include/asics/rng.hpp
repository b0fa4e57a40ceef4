#pragma once

#include <cstdint>
#include <random>

namespace asics {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Key for the sub-stream `index` of `master_seed`. Depends only on the pair, so streams
/// can be materialized in any order and on any thread.
constexpr std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
}

/// A deterministic random stream. The engine is seeded from a derived key through a
/// seed_seq, which spreads the key across the whole Mersenne state.
class RandomStream {
 public:
  using engine_type = std::mt19937_64;
  using result_type = engine_type::result_type;

  explicit RandomStream(std::uint64_t key) : engine_(seeded(key)) {}
  RandomStream(std::uint64_t master_seed, std::uint64_t index)
      : RandomStream(stream_key(master_seed, index)) {}

  static constexpr result_type min() { return engine_type::min(); }
  static constexpr result_type max() { return engine_type::max(); }
  result_type operator()() { return engine_(); }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  static engine_type seeded(std::uint64_t key) {
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return engine_type(seq);
  }

  engine_type engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace asics
