#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace intraday {

// Philox4x32-10 block function (Salmon et al., SC'11).
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t(M0) * ctr[0];
        const std::uint64_t p1 = std::uint64_t(M1) * ctr[2];
        const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += W0;
        key[1] += W1;
    }
    return ctr;
}

// One independent random stream per (seed, path, stream id). Draws are a pure
// function of those three numbers and the draw index, so the schedule of
// worker threads cannot change any value.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t path, std::uint32_t stream_id)
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
          path_lo_(std::uint32_t(path)), path_hi_(std::uint32_t(path >> 32)), id_(stream_id) {}

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() {
        if (used_ >= 2) refill();
        const std::uint64_t hi = block_[2 * used_], lo = block_[2 * used_ + 1];
        ++used_;
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (double(bits) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform(), u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
    void refill() {
        block_ = philox4x32({counter_++, id_, path_lo_, path_hi_}, key_);
        used_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint32_t path_lo_, path_hi_, id_;
    std::uint32_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int used_ = 2;
    double spare_ = 0;
    bool has_spare_ = false;
};

} // namespace intraday
