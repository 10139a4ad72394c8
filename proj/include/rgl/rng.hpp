// Counter-based splittable random streams (SplitMix64 core).
//
// Every Monte Carlo trial owns a private stream derived from
// (master seed, stream id), so any trial can be replayed bit-exactly
// without touching the others. Output k of a stream is a pure function
// of (seed, stream id, k).
#pragma once

#include <cmath>
#include <cstdint>

namespace rgl {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class RngStream {
public:
    RngStream() : base_(0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : base_(splitmix64(splitmix64(seed) ^ (stream_id * 0xD2B74407B1CE6E93ULL))),
          seed_(seed), stream_(stream_id) {}

    // Child stream, independent of outputs drawn so far.
    RngStream split(std::uint64_t child_id) const {
        return RngStream(base_ ^ 0xA5A5A5A5A5A5A5A5ULL, child_id);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    std::uint64_t next_u64() { return splitmix64(base_ + (++ctr_) * kGolden); }

    // Uniform in [0,1), 53-bit mantissa.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Fair coin.
    bool next_coin() { return (next_u64() & 1ULL) != 0; }

    // Integer in [0, m), rejection-free enough for m << 2^64.
    std::uint64_t next_below(std::uint64_t m) { return next_u64() % m; }

    // Standard normal, Box-Muller (deterministic per stream, pair cached).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t base_ = 0;
    std::uint64_t ctr_ = 0;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// The (master seed, trial index) -> stream map used by every experiment.
inline RngStream trial_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
    return RngStream(master_seed, trial_index);
}

} // namespace rgl
