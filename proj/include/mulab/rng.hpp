#pragma once

#include <cstdint>
#include <random>

namespace mulab {

// Stateless 64-bit finalizer (splitmix64 step). Used to derive independent
// per-trial seeds so results do not depend on evaluation order.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t task_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index) {
    return mix64(root ^ mix64(stream ^ mix64(index)));
}

// mt19937_64 with hand-rolled uniform mappings. The engine's output sequence
// is fixed by the standard and the mappings below avoid std::*_distribution,
// whose results vary across library implementations; identical seeds must
// yield byte-identical reports.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform in {0, ..., n-1}; n must be positive
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    bool coin() { return (engine_() & 1ULL) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace mulab
