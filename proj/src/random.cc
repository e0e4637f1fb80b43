#include "dnml/random.hpp"

namespace dnml {
namespace {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

CounterRng::CounterRng(Seed seed, std::uint64_t stream)
    : key_(mix64(mix64(seed.value + kGolden) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
  return mix64(mix64(key_ + counter * kGolden) ^ key_);
}

}  // namespace dnml
