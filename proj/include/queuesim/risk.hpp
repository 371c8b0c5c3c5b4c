#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "queuesim/generative.hpp"
#include "queuesim/types.hpp"

namespace queuesim {

/// Facility cost per facility, wait and unserved costs per time unit.
struct CostSpec {
    double facility = 1.0;
    double wait = 1.0;
    double unserved = 1.0;

    bool operator==(const CostSpec&) const = default;
};

[[nodiscard]] std::vector<std::string> validate_costs(const CostSpec& costs);

/// facility * n + wait * (total wait) + unserved * (total unserved time of
/// users arriving strictly before close_arrive).
[[nodiscard]] double loss(const QueueOutcome& outcome, const CostSpec& costs);

struct UserMeans {
    double wait = 0.0;
    double use = 0.0;
    double unserved = 0.0;
    std::size_t users = 0;
};

/// Means over users arriving at or after `from`. All means are 0 when no
/// user qualifies; check `users`.
[[nodiscard]] UserMeans user_means(std::span<const UserRecord> users, Time from = 0.0);

struct SimulationOptions {
    std::size_t replicates = 10000;
    std::uint64_t seed = 0;
    /// 0 picks the hardware concurrency.
    unsigned workers = 0;
    /// Draw fresh inputs for every facility count instead of reusing them.
    bool independent_seeds = false;
};

struct RiskEstimate {
    double risk = 0.0;
    std::vector<double> losses;
};

/// Mean loss over replicates drawn from streams (seed, 1..replicates).
[[nodiscard]] RiskEstimate estimate_risk(const GenerativeModel& model, std::size_t facilities, const CostSpec& costs,
                                         std::size_t replicates, std::uint64_t seed, unsigned workers = 0);

struct FacilityPoint {
    std::size_t facilities = 0;
    /// Mean loss; NaN when the sweep ran without costs.
    double risk = 0.0;
    std::vector<double> loss;
    std::vector<double> mean_wait;
    std::vector<double> mean_use;
    std::vector<double> mean_unserved;
};

struct RiskSweep {
    std::vector<FacilityPoint> points;
    /// Risk-minimising facility count (smallest on ties); absent without costs.
    std::optional<std::size_t> argmin;

    [[nodiscard]] const FacilityPoint& at(std::size_t facilities) const;
};

/// Per-replicate mean metrics for facility counts first..last, without costs.
[[nodiscard]] RiskSweep simulate_facilities(const GenerativeModel& model, std::size_t first, std::size_t last,
                                            const SimulationOptions& options);

/// Risk for each facility count in first..last. Unless independent seeds
/// are requested, every count sees the same replicate inputs.
[[nodiscard]] RiskSweep optimize_facilities(const GenerativeModel& model, const CostSpec& costs, std::size_t first,
                                            std::size_t last, const SimulationOptions& options);

/// First n after which the risk rose for `run` consecutive counts, or the
/// last swept n if that never happens.
[[nodiscard]] std::size_t suggested_stop(const RiskSweep& sweep, std::size_t run = 2);

struct SteadyStateOptions {
    /// Arrivals are drawn up to this time (and the model's close_arrive).
    Time run_length = kInfinity;
    SimulationOptions simulation;
};

struct SteadyStateResult {
    /// One entry per replicate, over users arriving at or after burn-in.
    std::vector<UserMeans> replicates;
    /// Replicates with no user after burn-in.
    std::size_t empty_replicates = 0;

    /// Average of the replicate means, skipping empty replicates.
    [[nodiscard]] UserMeans average() const;
};

/// Long-run metrics for a model without closures: each replicate is cut to
/// users arriving at or after model.burn_in. Throws InvalidInputs when the
/// horizon is unbounded without a max-users cap, or burn-in is not before
/// the run length.
[[nodiscard]] SteadyStateResult steady_state_metrics(const GenerativeModel& model, const SteadyStateOptions& options);

} // namespace queuesim
