#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace drchm {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// stream tags keep vertex/interaction/limit draws of one replicate apart
enum class StreamTag : std::uint64_t {
    vertices = 1,
    interactions = 2,
    limit = 3,
    gaussian = 4,
    misc = 5,
};

class Rng {
public:
    Rng(std::uint64_t master_seed, std::uint64_t stream, StreamTag tag = StreamTag::misc,
        std::uint64_t sub = 0)
        : eng_(splitmix64(splitmix64(master_seed) ^
                          splitmix64(splitmix64(stream) + static_cast<std::uint64_t>(tag)) ^
                          splitmix64(sub + 0x51ed2701ULL))) {}

    // (0,1]
    double uniform_oc() { return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; }
    // [0,1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double exponential() { return -std::log(uniform_oc()); }
    double normal() { return norm_(eng_); }
    std::uint64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        std::poisson_distribution<std::uint64_t> d(mean);
        return d(eng_);
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> norm_;
};

}  // namespace drchm
