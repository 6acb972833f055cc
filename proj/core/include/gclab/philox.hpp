#ifndef GCLAB_PHILOX_HPP
#define GCLAB_PHILOX_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace gclab {

/// Philox4x32-10 counter-based generator. A (key, counter) pair maps to four
/// 32-bit words; distinct counters give statistically independent blocks, so
/// streams can be indexed by (seed, stream id, element index) and drawn in any
/// order or from any thread without shared state.
struct Philox4x32 {
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

/// One logical random stream: key = 64-bit seed, counter = (stream, index).
/// Each index yields one Philox block = two doubles. Pure value type; drawing
/// at index i never touches any other index.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    /// Two uniforms in (0,1), one per 53-bit lane pair of block `index`.
    std::array<double, 2> uniform2(std::uint64_t index) const {
        const auto w = words(index);
        return {to_unit(w[0], w[1]), to_unit(w[2], w[3])};
    }

    double uniform(std::uint64_t index) const { return uniform2(index)[0]; }

    /// Two standard normals by Box-Muller from block `index`.
    std::array<double, 2> normal2(std::uint64_t index) const {
        const auto u = uniform2(index);
        const double r = std::sqrt(-2.0 * std::log(u[0]));
        const double t = 2.0 * M_PI * u[1];
        return {r * std::cos(t), r * std::sin(t)};
    }

    double normal(std::uint64_t index) const { return normal2(index)[0]; }

    std::array<std::uint32_t, 4> words(std::uint64_t index) const {
        return Philox4x32::block({static_cast<std::uint32_t>(index),
                                  static_cast<std::uint32_t>(index >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)},
                                 key_);
    }

private:
    // (hi,lo) -> 53-bit uniform, offset by half an ulp to stay in the open interval.
    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t r = (static_cast<std::uint64_t>(hi) << 32) | lo;
        return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
};

/// Splits a run seed into named substreams so that independent consumers
/// (chains, ensemble members, probe samples, coordinates) never collide.
inline std::uint64_t substream(std::uint64_t purpose, std::uint64_t member) {
    // 16 bits of purpose, 48 bits of member index.
    return (purpose << 48) ^ member;
}

}  // namespace gclab

#endif
