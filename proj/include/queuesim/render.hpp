#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "queuesim/types.hpp"

namespace queuesim {

struct PlotStyle {
    double line_width = 2.0;
    /// Vertical space between rows in pixels; 0 picks it from the row count.
    double gap = 0.0;
    std::string wait_colour = "#e69f00";
    std::string use_colour = "#0072b2";
    std::string unserved_colour = "#cc79a7";
    std::string facility_use_colour = "#009e73";
    std::string revive_colour = "#999999";
    std::string bar_colour = "#56b4e9";
    double width = 960.0;
    double height = 0.0; // 0 = derived from content
};

/// Equal-width bins anchored at 0: bin i covers
/// [origin + i*width, origin + (i+1)*width).
struct Histogram {
    double origin = 0.0;
    double width = 1.0;
    std::vector<std::size_t> counts;
    double min = 0.0;
    double max = 0.0;

    [[nodiscard]] double lower(std::size_t i) const { return origin + static_cast<double>(i) * width; }
    [[nodiscard]] double upper(std::size_t i) const { return origin + static_cast<double>(i + 1) * width; }
};

/// Freedman-Diaconis bin width (at least 1e-9, and wide enough to keep the
/// bin count bounded) on a grid anchored at 0. Throws on an empty sample.
[[nodiscard]] Histogram make_histogram(std::span<const double> values);
[[nodiscard]] Histogram make_histogram(std::span<const double> values, double width);
[[nodiscard]] double freedman_diaconis_width(std::span<const double> values);

/// One row per user (wait, use and unserved segments), one row per facility
/// (service and revival intervals), and rules at the finite closure-times.
[[nodiscard]] std::string render_queue_plot(const QueueOutcome& outcome, const PlotStyle& style = {});

/// Histogram panels for wait, use, unserved and use_prop.
[[nodiscard]] std::string render_summary_plot(const QueueOutcome& outcome, const PlotStyle& style = {});

struct DistributionSeries {
    std::size_t facilities = 0;
    std::vector<double> values;
};

/// One normalised histogram per facility count on shared bins, each marked
/// with its mean; the facet with the smallest mean is tagged "min-mean".
[[nodiscard]] std::string render_distributions(std::span<const DistributionSeries> series, std::string_view metric,
                                               const PlotStyle& style = {});

} // namespace queuesim
