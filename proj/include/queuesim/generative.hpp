#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "queuesim/random.hpp"
#include "queuesim/types.hpp"

namespace queuesim {

/// Poisson arrivals at `arrival_rate`, intended-use-times uniform on
/// (0, 2 * mean_use), and a shared patience function.
struct GenerativeModel {
    double arrival_rate = 1.0;
    Time mean_use = 1.0;
    PatienceSpec patience = Constant{kInfinity};
    AmenityConfig config;
    /// Users arriving before this time are dropped from steady-state metrics.
    Time burn_in = 0.0;
    /// Cap on users per replicate; required when arrivals never close.
    std::optional<std::size_t> max_users;

    bool operator==(const GenerativeModel&) const = default;
};

/// lambda 1.5, mu 6, patience 5 exp(-p/2), revival 2, closures 30/35/35.
[[nodiscard]] GenerativeModel reference_model(std::size_t facilities = 1);

[[nodiscard]] std::vector<std::string> validate_model(const GenerativeModel& model);

/// Cumulative Exp(rate) inter-arrival times, stopping before the first
/// arrival at or after `horizon` or once `max_users` arrivals exist.
/// Throws std::invalid_argument for an infinite horizon without a cap.
[[nodiscard]] std::vector<Time> sample_arrivals(double rate, Time horizon, RandomStream& stream,
                                                std::optional<std::size_t> max_users = std::nullopt);

[[nodiscard]] std::vector<Time> sample_use_times(Time mean_use, std::size_t count, RandomStream& stream);

/// Draws one replicate of queue inputs: arrivals first, then use-times.
[[nodiscard]] QueueInputs sample_inputs(const GenerativeModel& model, RandomStream& stream);

} // namespace queuesim
