#include "bskde/rng.hpp"

#include <cmath>

#include "bskde/errors.hpp"

namespace bskde {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SplitMix64 SplitMix64::substream(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t s = mix(seed + kGolden);
  for (std::uint64_t k : keys) s = mix(s ^ (k + kGolden));
  return SplitMix64(s);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::uniform(double a, double b) {
  return a + uniform01() * (b - a);
}

double SplitMix64::normal() {
  for (;;) {
    double u = 2.0 * uniform01() - 1.0;
    double v = 2.0 * uniform01() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double SplitMix64::gamma(double shape) {
  if (!(shape > 0.0)) throw ValidationError("gamma shape must be positive");
  if (shape < 1.0) {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform01();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double SplitMix64::beta(double p, double q) {
  double g1 = gamma(p);
  double g2 = gamma(q);
  double s = g1 + g2;
  if (s <= 0.0) return 0.5;
  return g1 / s;
}

void SplitMix64::dirichlet3(double a1, double a2, double a3, double& v1,
                            double& v2) {
  double g1 = gamma(a1);
  double g2 = gamma(a2);
  double g3 = gamma(a3);
  double s = g1 + g2 + g3;
  if (s <= 0.0) {
    v1 = v2 = 1.0 / 3.0;
    return;
  }
  v1 = g1 / s;
  v2 = g2 / s;
}

}  // namespace bskde
