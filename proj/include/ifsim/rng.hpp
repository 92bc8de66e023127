#pragma once

#include <cmath>
#include <cstdint>

namespace ifsim {

// Counter-based stream: draw i of seed s is identical no matter how many
// worker threads are used. Each stream is keyed by (master seed, stream index)
// and produces a deterministic sequence via splitmix64 applied to a counter.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : key_(mix(seed ^ mix(stream_index + 0x9e3779b97f4a7c15ULL))), counter_(0) {}

    std::uint64_t next_u64() {
        return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
    }

    // uniform in (0, 1); never returns exactly 0 or 1
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; the spare is cached
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ifsim
