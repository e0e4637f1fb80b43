#ifndef DNML_RANDOM_HPP
#define DNML_RANDOM_HPP

#include <cstdint>

namespace dnml {

struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

// Per-replication seed: base seed XOR replication index.
inline Seed derive_seed(Seed base, std::uint64_t replication) {
  return Seed{base.value ^ replication};
}

// Counter-based generator: draw i of a stream is a pure function of
// (seed, stream, i), so draws can be taken in any order or in parallel.
class CounterRng {
 public:
  CounterRng(Seed seed, std::uint64_t stream);

  std::uint64_t bits(std::uint64_t counter) const;

  // Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), bound > 0. Rejection-free multiply-shift;
  // bias is below 2^-64 * bound.
  std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const {
    return static_cast<std::uint64_t>(
        (static_cast<Wide>(bits(counter)) * bound) >> 64);
  }

 private:
  __extension__ using Wide = unsigned __int128;
  std::uint64_t key_;
};

}  // namespace dnml

#endif  // DNML_RANDOM_HPP
