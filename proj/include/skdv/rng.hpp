#ifndef SKDV_RNG_HPP
#define SKDV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace skdv {

/// Deterministic unit-normal stream: mt19937_64 + Box-Muller, avoiding the
/// implementation-defined std::normal_distribution so that seeded runs are
/// reproducible everywhere.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

private:
  // uniform in (0, 1]; the +1 keeps log() finite
  double next_uniform() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0;
};

/// Stream split for per-sample seeding.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace skdv

#endif
