#pragma once

#include <cstdint>
#include <vector>

namespace refute {

// Splitmix64 stream. Chosen over std::mt19937 so that sampled trajectories
// are reproducible bit-for-bit across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Independent substream key for (run seed, iteration, session index), so the
// sampled words do not depend on how sessions are scheduled across threads.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t iteration, std::uint64_t index) {
    Rng mix(seed ^ 0x243f6a8885a308d3ULL);
    std::uint64_t a = mix.next_u64();
    Rng mix2(a ^ (iteration * 0x9e3779b97f4a7c15ULL) ^ (index + 0xd1b54a32d192ed03ULL));
    return mix2.next_u64();
}

}  // namespace refute
