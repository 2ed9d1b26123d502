#pragma once

#include <array>
#include <cstdint>
#include <vector>

// Counter-based randomness. Every random draw in the project flows
// through RandomStream, which wraps a Philox4x64-10 keystream, so any
// (seed, purpose, index) triple yields the same bits on every platform
// and under any thread schedule. docs/RANDOMNESS.md specifies the
// generator and the derivation chain bit-exactly, with test vectors.

namespace mbcs {

/// SplitMix64 finalizer step: advances the state by the golden-gamma
/// constant and returns the mixed output. Used only for key derivation.
std::uint64_t splitmix64(std::uint64_t& state);

struct PhiloxKey {
    std::uint64_t k0 = 0;
    std::uint64_t k1 = 0;
};

/// One Philox4x64-10 block: 10 rounds over a 256-bit counter with the
/// standard multipliers and Weyl key schedule.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter, PhiloxKey key);

// Stable purpose tags for stream derivation. Values are part of the
// on-disk reproducibility contract; never renumber.
enum class StreamPurpose : std::uint64_t {
    features = 1,
    ground_truth = 2,
    corruptions = 3,
    evaluation = 4,
};

// A deterministic stream of doubles and integers backed by Philox.
// Consumes the keystream one 64-bit word at a time, block counter
// starting at zero. Copyable; a copy replays independently.
class RandomStream {
public:
    explicit RandomStream(PhiloxKey key);

    std::uint64_t next_u64();

    /// Uniform on [0,1) with 53-bit resolution.
    double uniform01();
    /// Uniform on (0,1]; safe as a log() argument.
    double uniform01_pos();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller; caches the paired deviate.
    double gaussian();
    /// Unbiased uniform integer on [0, bound) via modulo rejection.
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Fair +-1.
    int rademacher();
    /// Student-t with dof > 2 degrees of freedom, rescaled to unit
    /// variance: sqrt((dof-2)/dof) * z / sqrt(chi2_dof / dof).
    double student_t_unit(std::uint64_t dof);
    /// Standard Laplace (scale 1, variance 2).
    double laplace();

    /// k distinct indices from [0, n), returned sorted ascending.
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k);

private:
    void refill();

    PhiloxKey key_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buffer_{};
    std::size_t pos_ = 4;  // empty until first refill
    double spare_gaussian_ = 0.0;
    bool has_spare_ = false;
};

/// Derives the sub-stream key for (seed, purpose, index) by chaining
/// the SplitMix64 finalizer: s = mix(seed); s = mix(s ^ purpose);
/// s = mix(s ^ index); key = (s, mix(s)).
RandomStream derive_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index = 0);

/// FNV-1a over a byte string; used to hash experiment cell identities
/// into seed material.
std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace mbcs
