#include "mbcs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mbcs {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(prod >> 64);
    lo = static_cast<std::uint64_t>(prod);
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr, PhiloxKey key) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key.k0, lo1, hi0 ^ ctr[3] ^ key.k1, lo0};
        key.k0 += kWeyl0;
        key.k1 += kWeyl1;
    }
    return ctr;
}

RandomStream::RandomStream(PhiloxKey key) : key_(key) {}

void RandomStream::refill() {
    buffer_ = philox4x64({block_, 0, 0, 0}, key_);
    ++block_;
    pos_ = 0;
}

std::uint64_t RandomStream::next_u64() {
    if (pos_ >= 4) refill();
    return buffer_[pos_++];
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform01_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double RandomStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_gaussian_;
    }
    const double u1 = uniform01_pos();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_gaussian_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
    // Reject the tail that would bias the modulo.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x > limit);
    return x % bound;
}

int RandomStream::rademacher() {
    return (next_u64() >> 63) ? 1 : -1;
}

double RandomStream::student_t_unit(std::uint64_t dof) {
    if (dof <= 2) throw std::invalid_argument("student_t_unit: dof must exceed 2");
    const double z = gaussian();
    double chi2 = 0.0;
    for (std::uint64_t i = 0; i < dof; ++i) {
        const double g = gaussian();
        chi2 += g * g;
    }
    const double t = z / std::sqrt(chi2 / static_cast<double>(dof));
    return std::sqrt(static_cast<double>(dof - 2) / static_cast<double>(dof)) * t;
}

double RandomStream::laplace() {
    const int sign = rademacher();
    return sign * -std::log(uniform01_pos());
}

std::vector<std::uint64_t> RandomStream::sample_without_replacement(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k exceeds n");
    std::vector<std::uint64_t> pool(n);
    for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
    // Partial Fisher-Yates: after k swaps the prefix is the sample.
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t j = i + uniform_below(n - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::uint64_t> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

RandomStream derive_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
    std::uint64_t s = 0;
    std::uint64_t state = seed;
    s = splitmix64(state);
    state = s ^ static_cast<std::uint64_t>(purpose);
    s = splitmix64(state);
    state = s ^ index;
    s = splitmix64(state);
    PhiloxKey key;
    key.k0 = s;
    key.k1 = splitmix64(state);
    return RandomStream(key);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace mbcs
