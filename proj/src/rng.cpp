#include "qbound/rng.hpp"

namespace qbound {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed) noexcept : key_(mix64(seed ^ 0x5bd1e9955bd1e995ULL)) {}

SeededStream SeededStream::substream(std::uint64_t index) const noexcept {
  return SeededStream(mix64(key_ ^ mix64(index + kGolden)), 0);
}

SeededStream::result_type SeededStream::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double SeededStream::uniform() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double SeededStream::normal() { return normal_(*this); }

}  // namespace qbound
