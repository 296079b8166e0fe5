#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace oar {

/// Portable seeded generator.
///
/// std::mt19937_64 is bit-specified by the standard; the uniform and normal
/// transforms below are written out here because the standard distributions
/// are implementation-defined. Uniforms use the top 53 bits; normals use the
/// Box-Muller transform and discard the second variate.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oar
