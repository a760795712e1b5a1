#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lpsplit::detail {

/// Fixed-width bitset sized at construction; enough for SCC-id sets in the
/// split search. Comparable so it can key ordered containers.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::size_t size() const { return bits_; }

  bool operator==(const Bitset&) const = default;
  auto operator<=>(const Bitset&) const = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// SplitMix64 step; used to derive independent per-sample seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed for sample j of sweep point i: two splitmix64 rounds over the master
/// seed so every (point, program) pair is independently reproducible.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point,
                                 std::uint64_t sample) {
  return splitmix64(splitmix64(master ^ (0x9E3779B97F4A7C15ull * (point + 1))) ^
                    (sample + 1));
}

/// Uniform draw in [0, n) by 128-bit multiply-shift. Implemented here (rather
/// than std::uniform_int_distribution) so results are identical across
/// standard libraries.
template <class Rng>
std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace lpsplit::detail
