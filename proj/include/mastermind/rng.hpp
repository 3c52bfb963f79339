// rng.hpp -- seeded random source with stable labeled splitting

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

namespace mastermind {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for a named sub-stream; independent of any other label.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::string_view label) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : label)
    {
        h ^= std::uint8_t(c);
        h *= 0x100000001b3ULL;
    }
    return mix64(seed ^ mix64(h));
}

/// Child seed for the `index`-th item of a stream.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Deterministic random source. Draws are portable: no standard
/// distribution objects are involved.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [0, n); requires n > 0.
    std::size_t uniform_index(std::size_t n)
    {
        const std::uint64_t bound = n;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return std::size_t(x % bound);
    }

    std::uint64_t next() { return engine_(); }

    /// Engine state, for snapshot and restore.
    std::string state() const
    {
        std::ostringstream os;
        os << engine_;
        return os.str();
    }
    void restore(const std::string &state)
    {
        std::istringstream is(state);
        is >> engine_;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace mastermind
