#include "easme/rng.hpp"

#include <stdexcept>

namespace easme {

namespace {

__extension__ using uint128 = unsigned __int128;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

RngStream::result_type RngStream::next() {
    // Chained mixing of each key word; distinct lanes use distinct odd offsets
    // so that permuting the key words does not collide.
    std::uint64_t h = splitmix64(seed_);
    h = splitmix64(h ^ (generation_ * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    h = splitmix64(h ^ (stream_id_ * 0xAEF17502108EF2D9ULL + 0x632BE59BD9B4E019ULL));
    h = splitmix64(h ^ counter_++);
    return h;
}

std::uint64_t RngStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Lemire's nearly-divisionless rejection method.
    uint128 m = static_cast<uint128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<uint128>(next()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next());
    return lo + static_cast<std::int64_t>(uniform_below(span + 1));
}

double RngStream::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

RngStream derive_rng_stream(std::uint64_t master_seed, std::uint64_t generation, std::uint64_t stream_id) {
    return RngStream(master_seed, generation, stream_id);
}

} // namespace easme
