#pragma once

#include <cstdint>
#include <random>

namespace lendsim {

// Seed scrambler used to derive independent substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b + 0x9e3779b97f4a7c15ULL));
}

// Deterministic per-purpose random streams derived from one master seed.
// Streams depend only on (master, purpose, id), never on creation order, so
// draws consumed by one agent cannot perturb another agent's sequence.
class StreamFactory {
public:
    explicit StreamFactory(std::uint64_t master) : master_(master) {}

    std::mt19937_64 stream(std::uint64_t purpose) const {
        return std::mt19937_64(mix_seed(master_, purpose));
    }
    std::mt19937_64 stream(std::uint64_t purpose, std::uint64_t id) const {
        return std::mt19937_64(mix_seed(mix_seed(master_, purpose), id));
    }

    std::uint64_t master() const { return master_; }

private:
    std::uint64_t master_ = 0;
};

inline double uniform01(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace lendsim
