#pragma once

#include <cstdint>

#include "egz/group.hpp"
#include "egz/rational.hpp"

namespace egz {

// Random source. Certificates must regenerate bit-for-bit on any machine
// and under any parallel schedule, so sampling is a pure function of
// (seed, attempt, entry index):
//
//   golden  = 0x9E3779B97F4A7C15
//   mix(z)  = splitmix64 finalizer (Steele/Lea/Flood)
//   at(key, c) = mix(key + (c + 1) * golden)   -- splitmix64 output #c of
//                                                 the stream seeded at key
//   attempt key   = mix(seed XOR attempt)
//   entry key     = at(attempt key, t*r + j)   -- vector t, coordinate j
//   entry draws   = at(entry key, 0), at(entry key, 1), ...
//
// Each 0/1 entry is Bernoulli(num/den) with zero bias: draw a uniform
// 64-bit integer, reject values that would skew the residue classes, and
// compare the uniform remainder in [0, den) against num.
namespace splitmix {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
    return mix(key + (counter + 1) * golden);
}

} // namespace splitmix

struct SamplerConfig {
    GroupParams params;
    Rational q;
    std::int64_t length = 0; // N, the target sequence length
    std::uint64_t seed = 0;
    std::int64_t max_attempts = 1;

    SamplerConfig(GroupParams params_, Rational q_, std::int64_t length_, std::uint64_t seed_,
                  std::int64_t max_attempts_)
        : params(params_), q(std::move(q_)), length(length_), seed(seed_),
          max_attempts(max_attempts_) {
        if (q < 0 || q > 1) throw InputError("SamplerConfig: q must lie in [0, 1]");
        if (length < 0) throw InputError("SamplerConfig: N must be >= 0");
        if (max_attempts < 1) throw InputError("SamplerConfig: max_attempts must be >= 1");
        if (params.r > 0 && length > (std::int64_t{1} << 31) / params.r)
            throw ResourceError("SamplerConfig: N*r entries exceed supported size");
    }
};

namespace detail {

// Exactly uniform on [0, den) via rejection, then compare against num.
inline bool bernoulli_entry(std::uint64_t entry_key, std::uint64_t num, std::uint64_t den) {
    if (den == 1) return num >= 1; // q = 0/1 or 1/1
    const std::uint64_t threshold = (0 - den) % den; // 2^64 mod den
    for (std::uint64_t draw = 0;; ++draw) {
        const std::uint64_t u = splitmix::at(entry_key, draw);
        if (u >= threshold) return (u % den) < num;
    }
}

} // namespace detail

/// The random construction: N vectors in {0,1}^r, each of the N*r entries
/// an independent exact Bernoulli(q) bit, fully determined by
/// (seed, attempt).
inline GSequence sample_sequence(const SamplerConfig& config, std::int64_t attempt) {
    if (attempt < 0 || attempt >= config.max_attempts)
        throw InputError("sample_sequence: attempt index out of range");
    if (config.params.n == 1)
        return GSequence(config.params,
                         std::vector<ZVector>(static_cast<std::size_t>(config.length),
                                              zero_vector(config.params.r)));
    const std::uint64_t key =
        splitmix::mix(config.seed ^ static_cast<std::uint64_t>(attempt));
    if (!config.q.get_den().fits_ulong_p() || !config.q.get_num().fits_ulong_p())
        throw InputError("sample_sequence: q numerator/denominator must fit 64 bits");
    const std::uint64_t num = config.q.get_num().get_ui();
    const std::uint64_t den = config.q.get_den().get_ui();
    const std::size_t r = static_cast<std::size_t>(config.params.r);
    std::vector<ZVector> items;
    items.reserve(static_cast<std::size_t>(config.length));
    for (std::int64_t t = 0; t < config.length; ++t) {
        ZVector v(r, 0);
        for (std::size_t j = 0; j < r; ++j) {
            const std::uint64_t idx = static_cast<std::uint64_t>(t) * r + j;
            if (detail::bernoulli_entry(splitmix::at(key, idx), num, den)) v[j] = 1;
        }
        items.push_back(std::move(v));
    }
    return GSequence(config.params, std::move(items));
}

} // namespace egz
