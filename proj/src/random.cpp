#include "queuesim/random.hpp"

#include <cmath>

namespace queuesim {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
    };
    return std::mt19937_64(seq);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : seed_(seed)
    , index_(index)
    , engine_(make_engine(seed, index))
{
}

double RandomStream::uniform01()
{
    // 53 random bits, offset by half a step so neither 0 nor 1 occurs.
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1p-53;
}

double RandomStream::uniform(double lo, double hi)
{
    const double x = lo + (hi - lo) * uniform01();
    if (x >= hi) {
        return std::nextafter(hi, lo);
    }
    if (x <= lo) {
        return std::nextafter(lo, hi);
    }
    return x;
}

double RandomStream::exponential(double rate) { return -std::log(uniform01()) / rate; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace queuesim
