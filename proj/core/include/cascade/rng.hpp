#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cascade {

/// Seedable generator with platform-independent draws.
///
/// std::mt19937_64 produces a standard-specified bit stream, but the
/// standard *distributions* do not; conversions to doubles are done by
/// hand here so that fixtures serialize byte-identically everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Index drawn from an unnormalized weight vector.
    std::size_t categorical(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double r = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (r < acc) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace cascade
