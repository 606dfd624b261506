#ifndef LCIS_RANDOM_HPP
#define LCIS_RANDOM_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>

namespace lcis {

/// A 64-bit seed. Every random quantity in the library is a pure function of
/// one of these.
struct Seed {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(const Seed&, const Seed&) = default;
};

/// splitmix64 (Steele, Lea, Flood). Chosen because it is trivially portable,
/// so streams reproduce bit-exactly across platforms and languages.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}
  constexpr explicit SplitMix64(Seed seed) : state_(seed.value) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Fair coin: the lowest bit of the next output.
  constexpr bool next_bit() { return (next() & 1U) != 0; }

 private:
  std::uint64_t state_;
};

/// Derives an independent child seed: first output of splitmix64 seeded with
/// `seed XOR tag`.
constexpr Seed derive_seed(Seed seed, std::uint64_t tag) {
  return Seed{SplitMix64(seed.value ^ tag).next()};
}

/// Chained derivation, one tag at a time, left to right.
constexpr Seed derive_seed(Seed seed, std::initializer_list<std::uint64_t> tags) {
  for (const auto tag : tags) {
    seed = derive_seed(seed, tag);
  }
  return seed;
}

// Stream tags. The two graphs of a pair are drawn from
// derive_seed(seed, kFirstGraphTag) and derive_seed(seed, kSecondGraphTag).
inline constexpr std::uint64_t kFirstGraphTag = 0x243F6A8885A308D3ULL;
inline constexpr std::uint64_t kSecondGraphTag = 0x13198A2E03707344ULL;
// Interpolation-family members: derive_seed(seed, {kFamilyTag, i, j}).
inline constexpr std::uint64_t kFamilyTag = 0xA4093822299F31D0ULL;
// Experiment trials: derive_seed(master, {kTrialTag, n, trial}).
inline constexpr std::uint64_t kTrialTag = 0x082EFA98EC4E6C89ULL;

}  // namespace lcis

#endif  // LCIS_RANDOM_HPP
