#pragma once

#include <cstdint>
#include <vector>

#include "spraywork/expr.hpp"

namespace spraywork {

/// Small permuted-congruential generator; deterministic across platforms.
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 54u);

  std::uint32_t next();
  /// Uniform double in [0, 1).
  double uniform();
  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_, inc_;
};

struct SampleSpec {
  int count = 50;
  double box = 1.0;    // x uniform in [-box, box]^n
  double ymin = 0.5;   // |y| uniform in [ymin, ymax]
  double ymax = 2.0;
  std::uint64_t seed = 12345;
};

/// Seeded base-point sample: positions in a box, velocities on an annulus
/// (the zero section is excluded by construction).
std::vector<PointTM> sample_points(int n, const SampleSpec& spec);

}  // namespace spraywork
