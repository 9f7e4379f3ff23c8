#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace ecgw {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial seed; trials never share generator state.
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(splitmix64(seed) ^ (i * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), eng_);
  }

  std::vector<bool> mask(std::size_t n, double p = 0.5) {
    std::vector<bool> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = coin(p);
    return m;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ecgw
