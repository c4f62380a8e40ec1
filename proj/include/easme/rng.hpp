#pragma once

#include <cstdint>
#include <limits>

namespace easme {

// Counter-based random stream. The key (seed, generation, stream id) is kept
// verbatim and every draw hashes key + counter, so the mapping from the key to
// the sequence of draws is injective in the key and independent of how many
// other streams exist or in which order they are consumed.
//
// All derived quantities (uniform integers, uniform reals) are computed here
// rather than through <random> distributions, whose algorithms are
// implementation-defined; results are identical across hosts and compilers.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream() = default;
    RngStream(std::uint64_t seed, std::uint64_t generation, std::uint64_t stream_id)
        : seed_(seed), generation_(generation), stream_id_(stream_id) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }
    result_type next();

    // Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // Uniform real in [0, 1) with 53 bits of resolution.
    double uniform01();

    bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform01() < p); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t generation() const { return generation_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t counter() const { return counter_; }

    friend bool operator==(const RngStream&, const RngStream&) = default;

private:
    std::uint64_t seed_ = 0;
    std::uint64_t generation_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t counter_ = 0;
};

RngStream derive_rng_stream(std::uint64_t master_seed, std::uint64_t generation, std::uint64_t stream_id);

} // namespace easme
