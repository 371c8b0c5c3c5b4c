#include "queuesim/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace queuesim {

std::string_view metric_name(Metric m)
{
    switch (m) {
    case Metric::wait: return "wait";
    case Metric::use: return "use";
    case Metric::unserved: return "unserved";
    case Metric::use_full: return "use_full";
    case Metric::use_prop: return "use_prop";
    }
    return "?";
}

std::vector<double> default_probs() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

double quantile_interp(std::span<const double> sorted, double p)
{
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of an empty sample");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(fmt::format("quantile probability {} outside [0, 1]", p));
    }
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) {
        return sorted.back();
    }
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> metric_values(std::span<const UserRecord> users, Metric m)
{
    std::vector<double> out;
    out.reserve(users.size());
    for (const auto& u : users) {
        switch (m) {
        case Metric::wait: out.push_back(u.wait); break;
        case Metric::use: out.push_back(u.use); break;
        case Metric::unserved: out.push_back(u.unserved); break;
        case Metric::use_full: out.push_back(u.use_full); break;
        case Metric::use_prop:
            if (u.use_full > 0.0) {
                out.push_back(u.use / u.use_full);
            }
            break;
        }
    }
    return out;
}

namespace {

MetricSummary describe(std::vector<double> values, std::span<const double> probs)
{
    MetricSummary s;
    s.count = values.size();
    if (values.empty()) {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        s.mean = nan;
        s.sd = nan;
        s.quantiles.assign(probs.size(), nan);
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    else {
        s.sd = std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(values.begin(), values.end());
    for (double p : probs) {
        s.quantiles.push_back(quantile_interp(values, p));
    }
    return s;
}

} // namespace

SummaryTable summarize(const QueueOutcome& outcome, std::span<const double> probs)
{
    if (outcome.users.empty()) {
        throw std::invalid_argument("cannot summarize a queue with no users");
    }
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(fmt::format("quantile probability {} outside [0, 1]", p));
        }
    }
    SummaryTable table;
    table.probs.assign(probs.begin(), probs.end());
    for (Metric m : kAllMetrics) {
        table.metrics[static_cast<std::size_t>(m)] = describe(metric_values(outcome.users, m), probs);
    }
    return table;
}

SummaryTable summarize(const QueueOutcome& outcome)
{
    const auto probs = default_probs();
    return summarize(outcome, probs);
}

} // namespace queuesim
