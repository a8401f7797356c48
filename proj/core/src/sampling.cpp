#include "spraywork/sampling.hpp"

#include <cmath>

#include "spraywork/errors.hpp"

namespace spraywork {

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream)
    : state_(0), inc_((stream << 1) | 1u) {
  next();
  state_ += seed;
  next();
}

std::uint32_t Pcg32::next() {
  std::uint64_t old = state_;
  state_ = old * 6364136223846793005ULL + inc_;
  std::uint32_t xorshifted =
      static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

double Pcg32::uniform() { return next() * 0x1.0p-32; }

double Pcg32::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::vector<PointTM> sample_points(int n, const SampleSpec& spec) {
  if (spec.count < 1) throw ConfigError("sample count must be >= 1");
  if (spec.ymin <= 0.0 || spec.ymax < spec.ymin)
    throw ConfigError("velocity annulus must satisfy 0 < ymin <= ymax");
  Pcg32 rng(spec.seed);
  std::vector<PointTM> pts;
  pts.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    PointTM p;
    p.x.resize(n);
    p.y.resize(n);
    for (int j = 0; j < n; ++j) p.x[j] = rng.uniform(-spec.box, spec.box);
    for (;;) {
      double norm2 = 0.0;
      for (int j = 0; j < n; ++j) {
        p.y[j] = rng.uniform(-1.0, 1.0);
        norm2 += p.y[j] * p.y[j];
      }
      if (norm2 > 1e-6) {
        double scale = rng.uniform(spec.ymin, spec.ymax) / std::sqrt(norm2);
        for (int j = 0; j < n; ++j) p.y[j] *= scale;
        break;
      }
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace spraywork
