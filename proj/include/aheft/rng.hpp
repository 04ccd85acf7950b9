// Counter-based seeded random streams. Substreams are derived by hashing
// (master_seed, stream ids) so seed-level parallelism is order-independent.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace aheft {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic stream of uniform/normal doubles. The Gaussian path is
// explicit Box-Muller over mt19937_64 uniforms, so output is identical
// across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : key_(seed), gen_(splitmix64(seed ^ 0x1234567d)) {}

    // Derive an independent child stream from this stream's key and an id list.
    RngStream substream(std::initializer_list<std::uint64_t> ids) const {
        std::uint64_t h = splitmix64(key_ ^ 0x243f6a8885a308d3ULL);
        for (auto id : ids) h = splitmix64(h ^ splitmix64(id));
        return RngStream(h);
    }

    // Uniform in [0, 1).
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t next_u64() { return gen_(); }

    // Standard normal via Box-Muller, spare value cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace aheft
