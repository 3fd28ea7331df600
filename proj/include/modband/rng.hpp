#pragma once

#include <cstdint>

namespace modband {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so results do not depend on scheduling.
class CounterRng {
public:
    static constexpr const char* name = "splitmix64-ctr/v1";

    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t at(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t next() { return at(counter_++); }

    // open interval (0, 1)
    double uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace modband
