#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace oraclelab {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Seeded random stream. Streams are keyed by (seed, trial, site) so that
/// per-trial randomness does not depend on scheduling order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(detail::splitmix64(seed)) {}

  /// Independent stream for one trial at one call site.
  static Rng derive(std::uint64_t seed, std::uint64_t trial, std::string_view site) {
    std::uint64_t key = detail::splitmix64(seed);
    key = detail::splitmix64(key ^ detail::splitmix64(trial + 0x632be59bd9b4e019ULL));
    key = detail::splitmix64(key ^ detail::fnv1a(site));
    return Rng(key);
  }

  /// Child stream; advances this stream by one draw.
  Rng split(std::string_view site) { return derive(engine_(), 0, site); }

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  template <typename Real = double>
  Real normal() {
    return std::normal_distribution<Real>(Real(0), Real(1))(engine_);
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oraclelab
