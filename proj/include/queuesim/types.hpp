#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "queuesim/patience.hpp"
#include "queuesim/time.hpp"

namespace queuesim {

/// Facility configuration for an amenity: facility count, revival-time and
/// the three closure-times (new arrivals, new services, all services).
struct AmenityConfig {
    std::size_t facilities = 1;
    Time revive = 0.0;
    Time close_arrive = kInfinity;
    Time close_service = kInfinity;
    Time close_full = kInfinity;
    /// Opening delay per facility; empty means every facility opens at 0.
    std::vector<Time> initial_delays;

    [[nodiscard]] Time initial_delay(std::size_t facility) const
    {
        return initial_delays.empty() ? 0.0 : initial_delays.at(facility);
    }

    bool operator==(const AmenityConfig&) const = default;
};

struct QueueInputs {
    std::vector<Time> arrive;
    std::vector<Time> use_full;
    PatienceSpec patience = Constant{kInfinity};
    AmenityConfig config;

    [[nodiscard]] std::size_t users() const { return arrive.size(); }

    bool operator==(const QueueInputs&) const = default;
};

/// Outcome for a single user.
///
/// `initiation` is the time the user exits the queue (service start, or the
/// moment they give up). `leave` follows the printed queue tables: the end of
/// service for served users and the arrival-time for users never served.
struct UserRecord {
    Time arrive = 0.0;
    Time wait = 0.0;
    Time use = 0.0;
    Time use_full = 0.0;
    Time unserved = 0.0;
    Time initiation = 0.0;
    Time leave = 0.0;
    bool served = false;
    /// 1-based facility index, absent when not served.
    std::optional<std::size_t> facility;

    bool operator==(const UserRecord&) const = default;
};

struct FacilityRecord {
    Time open = 0.0;
    Time end_service = 0.0;
    Time use = 0.0;
    Time revive = 0.0;
    std::size_t users_served = 0;

    bool operator==(const FacilityRecord&) const = default;
};

struct QueueOutcome {
    std::vector<UserRecord> users;
    std::vector<FacilityRecord> facilities;
    AmenityConfig config;
    /// Row k holds the forward queue-priorities of user k+1 for
    /// priorities 1..k+1; only filled when requested.
    std::optional<std::vector<std::vector<std::size_t>>> forward_priorities;

    bool operator==(const QueueOutcome&) const = default;
};

/// Raised when queue inputs or model parameters violate their constraints.
/// Carries every violation found, not just the first.
class InvalidInputs : public std::invalid_argument {
public:
    explicit InvalidInputs(std::vector<std::string> errors);

    [[nodiscard]] const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

} // namespace queuesim
