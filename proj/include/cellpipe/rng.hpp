#pragma once

#include <cmath>
#include <cstdint>

namespace cellpipe {

// Counter-based PRNG: hash(seed, counter) -> u64 via the splitmix64 finalizer.
// Every draw is a pure function of (seed, counter), so synthetic fixtures are
// reproducible across platforms and independent of evaluation order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return hash(seed_, counter_++); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Standard normal via Box-Muller; consumes two counters.
    double next_gaussian() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    static std::uint64_t hash(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Stateless draw for data-parallel noise: one value per (seed, index).
    static double gaussian_at(std::uint64_t seed, std::uint64_t index) {
        const std::uint64_t a = hash(seed, 2 * index);
        const std::uint64_t b = hash(seed, 2 * index + 1);
        const double u1 = 1.0 - static_cast<double>(a >> 11) * 0x1.0p-53;
        const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace cellpipe
