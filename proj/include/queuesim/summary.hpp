#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "queuesim/types.hpp"

namespace queuesim {

enum class Metric { wait, use, unserved, use_full, use_prop };

inline constexpr std::array<Metric, 5> kAllMetrics{Metric::wait, Metric::use, Metric::unserved, Metric::use_full,
                                                   Metric::use_prop};

[[nodiscard]] std::string_view metric_name(Metric m);

/// Probabilities used when none are given.
[[nodiscard]] std::vector<double> default_probs();

struct MetricSummary {
    double mean = 0.0;
    double sd = 0.0;
    std::vector<double> quantiles;
    std::size_t count = 0;
};

struct SummaryTable {
    std::vector<double> probs;
    std::array<MetricSummary, kAllMetrics.size()> metrics;

    [[nodiscard]] const MetricSummary& at(Metric m) const { return metrics[static_cast<std::size_t>(m)]; }
};

/// Linear interpolation between order statistics at position (m-1)p of a
/// sorted sample. Throws std::invalid_argument on an empty sample or p
/// outside [0, 1].
[[nodiscard]] double quantile_interp(std::span<const double> sorted, double p);

/// Per-user values of one metric. use_prop skips users whose intended use is 0.
[[nodiscard]] std::vector<double> metric_values(std::span<const UserRecord> users, Metric m);

/// Mean, sample standard deviation and quantiles of every metric over all
/// users. Throws std::invalid_argument when there are no users.
[[nodiscard]] SummaryTable summarize(const QueueOutcome& outcome, std::span<const double> probs);
[[nodiscard]] SummaryTable summarize(const QueueOutcome& outcome);

} // namespace queuesim
