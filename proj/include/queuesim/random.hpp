#pragma once

#include <cstdint>
#include <random>

namespace queuesim {

/// Reproducible random source for one simulation replicate.
///
/// The draw sequence depends only on (seed, index), so replicates can be
/// generated in any order or on any thread. Distributions are computed here
/// from raw 64-bit draws rather than through <random> distribution objects,
/// whose output is implementation-defined.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t index);

    /// Uniform on the open interval (0, 1).
    double uniform01();
    /// Uniform on the open interval (lo, hi); requires lo < hi.
    double uniform(double lo, double hi);
    /// Exponential with the given rate, by inversion.
    double exponential(double rate);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] std::uint64_t index() const noexcept { return index_; }

private:
    std::uint64_t seed_;
    std::uint64_t index_;
    std::mt19937_64 engine_;
};

/// Mixes a salt into a master seed (splitmix64 finalizer).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

} // namespace queuesim
