#pragma once

#include <cstdint>

namespace combforge {

// splitmix64 finalizer; bijective with full avalanche.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Inverse of the standard normal CDF (Wichura's AS241, double precision).
double inverse_normal_cdf(double p);

// Deterministic counter-based stream: every draw is a pure function of
// (seed, realization, item, axis), so results do not depend on evaluation
// order or thread count.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t realization, std::uint64_t item, std::uint64_t axis) const {
        std::uint64_t h = splitmix64(seed_);
        h = splitmix64(h + realization);
        h = splitmix64(h + item);
        h = splitmix64(h + axis);
        return h;
    }

    // Uniform draw in the open interval (0, 1).
    double uniform(std::uint64_t realization, std::uint64_t item, std::uint64_t axis) const {
        const std::uint64_t mantissa = bits(realization, item, axis) >> 11;
        return (static_cast<double>(mantissa) + 0.5) * 0x1.0p-53;
    }

    // Standard normal draw via the inverse-CDF transform.
    double normal(std::uint64_t realization, std::uint64_t item, std::uint64_t axis) const {
        return inverse_normal_cdf(uniform(realization, item, axis));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

} // namespace combforge
