#pragma once

#include "queuesim/types.hpp"

namespace oracle {

/// Brute-force chronological simulation: an explicit FIFO queue, per-facility
/// busy-until clocks and patience deadlines re-checked at every event. Used
/// only to cross-check the recursive engine.
///
/// Events at one instant are handled as: service completions (a facility
/// free at exactly t is idle at t), then arrivals, then a single pass over
/// the queue in arrival order where each user first gives up if a patience
/// deadline or the service closure has been reached, and otherwise takes the
/// lowest-numbered idle facility.
[[nodiscard]] queuesim::QueueOutcome event_sim(const queuesim::QueueInputs& inputs);

} // namespace oracle
