#pragma once

#include <array>
#include <cstdint>

namespace simim {

/// Philox4x64-10 counter-based block generator.
///
/// Each 256-bit block is a pure function of (key, counter), so draws can be
/// indexed by (seed, stream, path, step) and produced in any order on any
/// number of workers with identical results.
struct Philox4x64 {
  using Block = std::array<std::uint64_t, 4>;
  static Block generate(std::uint64_t key0, std::uint64_t key1, const Block& counter);
};

/// Map 64 random bits to the open interval (0, 1).
double uniform_from_bits(std::uint64_t bits);

struct NormalPair {
  double z0;
  double z1;
};

/// Two independent standard normals for the node (seed, stream, path, step),
/// via Box-Muller on one Philox block.
NormalPair normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t path,
                       std::uint64_t step);

/// Inverse standard normal CDF (Acklam's rational approximation, |rel err| < 2e-9).
double normal_quantile(double p);

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace simim
