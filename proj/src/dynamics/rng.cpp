#include "hexmix/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hexmix {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32Ctr philox4x32_10(Philox4x32Ctr c, Philox4x32Key k) {
    for (int r = 0; r < 10; ++r) {
        if (r) {
            k[0] += kW0;
            k[1] += kW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

EventStream::EventStream(std::uint64_t seed, std::uint32_t stream, int nslots, double rate, double t0, double t1)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream),
      nslots_(static_cast<std::uint32_t>(nslots)),
      rate_(rate),
      t_(t0),
      t1_(t1) {
    if (nslots < 0) throw std::invalid_argument("negative slot count");
    if (nslots > 0 && !(rate > 0)) throw std::invalid_argument("event rate must be positive");
}

bool EventStream::next(Event& e) {
    if (nslots_ == 0 || t_ >= t1_) return false;
    const std::uint64_t i = index_;
    Philox4x32Ctr w = philox4x32_10(
        {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32), stream_, 0u}, key_);
    const double dt = -std::log(u32(w[0])) / rate_;
    std::uint32_t lane = 1;
    auto more = [&] {
        return philox4x32_10({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32), stream_, lane++},
                             key_)[0];
    };
    const std::uint32_t slot = bounded32(w[1], nslots_, more);
    const double u = u52((static_cast<std::uint64_t>(w[2]) << 32) | w[3]);
    const double t = t_ + dt;
    if (t >= t1_) {
        t_ = t1_;
        return false;
    }
    t_ = t;
    ++index_;
    e.t = t;
    e.slot = static_cast<int>(slot);
    e.u = u;
    return true;
}

}  // namespace hexmix
