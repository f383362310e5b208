#pragma once

#include <cstdint>
#include <string_view>

namespace repstring {

namespace detail {
// splitmix64 finalizer
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace detail

// Root seed plus named substreams. Identical (seed, config) means identical
// draws; substreams keep the X / Z / U randomizers independent of each other
// and of rejection retries, and make per-replicate parallelism deterministic.
//
// uniform_at(i) is counter-based: the draw for position i does not depend on
// the order in which positions are generated, which is what makes two-sided
// window extension reproducible.
class Seed {
 public:
  explicit Seed(uint64_t root) : state_(detail::mix64(root)) {}

  Seed derive(std::string_view name) const {
    Seed s(*this);
    s.state_ = detail::mix64(state_ ^ detail::mix64(detail::fnv1a(name)));
    return s;
  }
  Seed derive(uint64_t index) const {
    Seed s(*this);
    s.state_ = detail::mix64(state_ ^ detail::mix64(index + 0x632be59bd9b4e019ULL));
    return s;
  }

  uint64_t value() const { return state_; }

  uint64_t bits_at(int64_t index) const {
    return detail::mix64(state_ ^ detail::mix64(static_cast<uint64_t>(index) *
                                                0xd1342543de82ef95ULL));
  }
  // uniform in [0,1)
  double uniform_at(int64_t index) const {
    return static_cast<double>(bits_at(index) >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

// Sequential stream (splitmix64) for code that draws an unbounded number of
// variates, e.g. bootstrap resampling and custom samplers.
class RandomStream {
 public:
  explicit RandomStream(Seed s) : state_(s.value()) {}

  uint64_t next_bits() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_uniform() {
    return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
  }
  // unbiased uniform index in [0, n)
  uint64_t next_index(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next_bits();
      if (r >= threshold) return r % n;
    }
  }

 private:
  uint64_t state_;
};

}  // namespace repstring
