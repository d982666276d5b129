#pragma once

#include <cstdint>
#include <initializer_list>

namespace bskde {

/// SplitMix64 stream with keyed substream derivation. The generator is fully
/// specified here (no implementation-defined library distributions), so
/// sequences are identical across platforms and across thread counts as long
/// as each task draws from its own substream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Finalizer used both as the output function and for key mixing.
  static std::uint64_t mix(std::uint64_t z);

  /// Independent substream keyed by (seed, keys...). Derivation is a hash
  /// chain, so distinct key tuples give unrelated streams.
  static SplitMix64 substream(std::uint64_t seed,
                              std::initializer_list<std::uint64_t> keys);

  std::uint64_t next();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01();
  double uniform(double a, double b);

  /// Standard normal via the polar method; the spare value is discarded to
  /// keep the draw count per call fixed.
  double normal();

  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 is boosted
  /// through Gamma(shape + 1) * U^(1/shape).
  double gamma(double shape);

  double beta(double p, double q);

  /// (V1, V2) margin pair of a Dirichlet(a1, a2, a3) draw.
  void dirichlet3(double a1, double a2, double a3, double& v1, double& v2);

 private:
  std::uint64_t state_;
};

}  // namespace bskde
