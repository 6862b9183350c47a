#pragma once

#include <cstdint>
#include <limits>

namespace hyperperc {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b));
}

/// Top 53 bits as a double in [0, 1).
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Fixed labels for the independent random substreams derived from one
/// master seed. New purposes get new labels; existing draws never move.
enum class Purpose : std::uint64_t {
  vertices = 0x7665727469636573ULL,   // "vertices"
  edges = 0x6564676573000000ULL,      // "edges"
  infection = 0x696e666563740000ULL,  // "infect"
  testing = 0x7465737400000000ULL,    // "test"
};

constexpr std::uint64_t substream_key(std::uint64_t seed, Purpose purpose,
                                      std::uint64_t index = 0) noexcept {
  return hash_combine(hash_combine(seed, static_cast<std::uint64_t>(purpose)), index);
}

/// Single keyed draw: the value at position (a, b) of a purpose's substream.
constexpr double keyed_uniform(std::uint64_t seed, Purpose purpose, std::uint64_t a,
                               std::uint64_t b = 0) noexcept {
  return to_unit(hash_combine(substream_key(seed, purpose, a), b));
}

/// Counter-based stream: draw k is a pure function of (key, k). Satisfies
/// UniformRandomBitGenerator so it can feed <random> distributions.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  constexpr explicit RandomStream(std::uint64_t key) noexcept : key_(key) {}
  constexpr RandomStream(std::uint64_t seed, Purpose purpose, std::uint64_t index = 0) noexcept
      : key_(substream_key(seed, purpose, index)) {}

  constexpr result_type operator()() noexcept { return hash_combine(key_, counter_++); }
  constexpr double uniform() noexcept { return to_unit((*this)()); }
  constexpr std::uint64_t position() const noexcept { return counter_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hyperperc
