// Counter-based random numbers (Philox4x32-10) and the seeded event stream
// that drives every chain and coupling.
#pragma once

#include <array>
#include <cstdint>

namespace hexmix {

using Philox4x32Ctr = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

Philox4x32Ctr philox4x32_10(Philox4x32Ctr ctr, Philox4x32Key key);

std::uint64_t splitmix64(std::uint64_t x);

// Seed of replica `index` under a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// 52-bit uniform in the open interval (0, 1); 53 bits would round the top value to 1.
inline double u52(std::uint64_t bits) { return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52; }

// 32-bit uniform in the open interval (0, 1).
inline double u32(std::uint32_t bits) { return (static_cast<double>(bits) + 0.5) * 0x1.0p-32; }

// Unbiased integer in [0, n) from a 32-bit source (Lemire), drawing more
// words from `next` only on rejection.
template <class Next>
std::uint32_t bounded32(std::uint32_t first, std::uint32_t n, Next&& next) {
    std::uint64_t m = static_cast<std::uint64_t>(first) * n;
    auto low = static_cast<std::uint32_t>(m);
    if (low < n) {
        const std::uint32_t threshold = static_cast<std::uint32_t>(-n) % n;
        while (low < threshold) {
            m = static_cast<std::uint64_t>(next()) * n;
            low = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

struct Event {
    double t = 0.0;
    int slot = 0;  // position in the active-site list
    double u = 0.0;
};

// Poisson process of total rate `rate` on [t0, t1) with uniform slot choice
// among `nslots`. Event i depends only on (seed, stream, i).
class EventStream {
public:
    EventStream(std::uint64_t seed, std::uint32_t stream, int nslots, double rate, double t0, double t1);

    // Advances to the next event; false once the time passes t1.
    bool next(Event& e);
    std::uint64_t count() const { return index_; }

private:
    Philox4x32Key key_;
    std::uint32_t stream_;
    std::uint32_t nslots_;
    double rate_;
    double t_;
    double t1_;
    std::uint64_t index_ = 0;
};

}  // namespace hexmix
