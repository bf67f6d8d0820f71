#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <sstream>
#include <string>

namespace corrview {

inline constexpr const char* kRngName = "mt19937_64+splitmix64-streams";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the stream-th independent chain derived from a base seed. Chain 0
// of seed s is not the same stream as chain 1 of seed s - 1.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Portable generator: the engine is fully specified by the standard and the
// variate transforms below are implemented here rather than taken from
// <random> distributions, whose algorithms differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased (Lemire's multiply-and-reject).
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Index drawn proportionally to non-negative weights whose sum is total.
  std::size_t categorical(std::span<const double> weights, double total) {
    const double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      acc += weights[k];
      if (u < acc) return k;
    }
    // Rounding left u at the very top; take the last positive weight.
    for (std::size_t k = weights.size(); k-- > 0;) {
      if (weights[k] > 0.0) return k;
    }
    return weights.size() - 1;
  }

  template <typename Container>
  void shuffle(Container& c) {
    for (std::size_t i = c.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(c[i - 1], c[j]);
    }
  }

  std::string serialize() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }

  // Returns false (leaving the engine unchanged) when text is not a valid
  // engine state.
  bool deserialize(const std::string& text) {
    std::istringstream is(text);
    std::mt19937_64 engine;
    if (!(is >> engine)) return false;
    engine_ = engine;
    return true;
  }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace corrview
