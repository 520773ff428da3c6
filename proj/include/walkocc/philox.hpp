#pragma once

#include <array>
#include <cstdint>

namespace walkocc {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// Stateless permutation of a 128-bit counter under a 64-bit key; streams
/// are separated by putting the trial index in the high counter words, so
/// distinct trials can never share a counter block regardless of how many
/// draws each consumes. This makes parallel Monte Carlo reproducible: the
/// results depend only on (seed, trial, draw index), never on scheduling.
class Philox4x32 {
public:
    /// Stream for one (seed, trial) pair.
    Philox4x32(std::uint64_t seed, std::uint64_t trial)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          trial_lo_(static_cast<std::uint32_t>(trial)),
          trial_hi_(static_cast<std::uint32_t>(trial >> 32)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() {
        if (pending_) {
            pending_ = false;
            return to_unit(block_[2], block_[3]);
        }
        block_ = run_block(counter_++);
        pending_ = true;
        return to_unit(block_[0], block_[1]);
    }

    /// Raw 4x32 output block for a given draw-block index (test hook).
    std::array<std::uint32_t, 4> run_block(std::uint64_t block_index) const {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_index);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_index >> 32);
        std::uint32_t c2 = trial_lo_;
        std::uint32_t c3 = trial_hi_;
        std::uint32_t k0 = key0_;
        std::uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = kMul0 * static_cast<std::uint64_t>(c0);
            const std::uint64_t p1 = kMul1 * static_cast<std::uint64_t>(c2);
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {c0, c1, c2, c3};
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static double to_unit(std::uint32_t lo, std::uint32_t hi) {
        const std::uint64_t bits =
            (static_cast<std::uint64_t>(hi) << 32) | static_cast<std::uint64_t>(lo);
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

    std::uint32_t key0_, key1_, trial_lo_, trial_hi_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    bool pending_ = false;
};

} // namespace walkocc
