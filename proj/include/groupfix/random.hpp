#ifndef GROUPFIX_RANDOM_HPP
#define GROUPFIX_RANDOM_HPP

#include <array>
#include <cstdint>
#include <random>

namespace groupfix {

// Seeded generator with fully pinned-down output so that runs are
// reproducible across platforms: the engine is std::mt19937_64 (specified by
// the standard bit for bit) and doubles are derived as (x >> 11) * 2^-53,
// never through distribution objects (those are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  // uniform in (lo, hi]
  double uniform_open_lo(double lo, double hi) {
    return lo + (1.0 - uniform()) * (hi - lo);
  }

  // uniform direction on the unit sphere; draws z = cos(polar) first, then
  // the azimuth.
  std::array<double, 3> unit_axis();

 private:
  std::mt19937_64 eng_;
};

}  // namespace groupfix

#endif
