#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "queuesim/types.hpp"

namespace queuesim {

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    [[nodiscard]] bool ok() const noexcept { return errors.empty(); }
};

[[nodiscard]] ValidationReport validate_config(const AmenityConfig& config);

/// Checks every constraint on the inputs and reports all violations.
/// A non-zero minimum opening delay is a warning only.
[[nodiscard]] ValidationReport validate_inputs(const QueueInputs& inputs);

/// Queue-priority of a user arriving at `arrive` after waiting `wait`:
/// one plus the number of earlier users whose queue exit lies strictly after
/// arrive + wait. An infinite wait always yields 1.
[[nodiscard]] std::size_t queue_priority(Time arrive, Time wait, std::span<const Time> prior_exits);

struct MaxPriority {
    std::size_t priority = 1;
    Time patience = kInfinity;
};

/// Largest priority p in 1..patience_row.size() whose patience expiry finds
/// the user at priority p or worse, with the matching patience value.
/// `patience_row[p-1]` is the patience at priority p. The row may be cut
/// short at the user's priority on arrival, since no larger priority can
/// qualify.
[[nodiscard]] MaxPriority max_queue_priority(std::span<const Time> patience_row, Time arrive,
                                             std::span<const Time> prior_exits);

/// Facility availability as seen by the user arriving at `time`. Kept as
/// absolute free-times; the remaining delay of facility i is
/// max(free_at[i] - time, 0).
struct DelayState {
    std::vector<Time> free_at;
    Time time = 0.0;

    [[nodiscard]] static DelayState initial(const AmenityConfig& config);
    [[nodiscard]] Time delay(std::size_t facility) const;
    [[nodiscard]] std::vector<Time> delays() const;
};

/// Advances the recursion by one user (1-based index `user`) and returns
/// their record. `state` must reflect all earlier users and `prior_exits`
/// must include every earlier exit still later than `arrive`.
[[nodiscard]] UserRecord step_user(DelayState& state, std::size_t user, Time arrive, Time use_full,
                                   const PatienceSpec& patience, std::span<const Time> prior_exits,
                                   const AmenityConfig& config);

struct RunOptions {
    bool forward_priorities = false;
};

/// Maps queue inputs to the complete queue outcome. Throws InvalidInputs.
[[nodiscard]] QueueOutcome run_queue(const QueueInputs& inputs, const RunOptions& options = {});

[[nodiscard]] std::vector<FacilityRecord> facility_summary(std::span<const UserRecord> users,
                                                           const AmenityConfig& config);

} // namespace queuesim
