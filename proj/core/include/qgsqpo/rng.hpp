#pragma once

#include <cstdint>
#include <random>

namespace qgsqpo {

/// Seeded uniform stream with a fixed, platform-independent algorithm.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard. Uniform doubles are built from the top 53 bits directly
/// (std::uniform_real_distribution is implementation-defined and would break
/// cross-platform trace reproducibility).
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Stable per-run seed from an experiment seed and cell/run coordinates.
/// Adding cells never perturbs the seeds of existing coordinates.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t q_index,
                          std::uint64_t a_index, std::uint64_t run_index);

}  // namespace qgsqpo
