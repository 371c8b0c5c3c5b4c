#include "queuesim/render.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

#include <fmt/format.h>

#include "queuesim/summary.hpp"

namespace queuesim {

namespace {

constexpr double kMinBinWidth = 1e-9;
constexpr std::size_t kMaxBins = 200;

constexpr double kLeft = 90.0;
constexpr double kRight = 30.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 50.0;

// Coordinates are printed with fixed precision so output is byte-stable.
std::string num(double v) { return fmt::format("{:.2f}", v); }

struct Canvas {
    std::string body;

    template <class... Args>
    void add(fmt::format_string<Args...> f, Args&&... args)
    {
        fmt::format_to(std::back_inserter(body), f, std::forward<Args>(args)...);
        body += '\n';
    }
};

std::string document(double width, double height, std::string_view title, const Canvas& canvas)
{
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
                       "viewBox=\"0 0 {} {}\">\n",
                       num(width), num(height), num(width), num(height));
    out += fmt::format("<title>{}</title>\n", title);
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", num(width),
                       num(height));
    out += canvas.body;
    out += "</svg>\n";
    return out;
}

double nice_step(double range, int target_ticks)
{
    if (!(range > 0.0)) {
        return 1.0;
    }
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0) {
        nice = 1.0;
    }
    else if (frac <= 2.0) {
        nice = 2.0;
    }
    else if (frac <= 5.0) {
        nice = 5.0;
    }
    return nice * mag;
}

std::string tick_label(double v)
{
    std::string s = fmt::format("{:.6g}", v);
    return s == "-0" ? "0" : s;
}

struct Scale {
    double lo;
    double hi;
    double px_lo;
    double px_hi;

    [[nodiscard]] double operator()(double v) const
    {
        if (hi <= lo) {
            return px_lo;
        }
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

void time_axis(Canvas& c, const Scale& x, double y)
{
    c.add("<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
          num(x.px_lo), num(y), num(x.px_hi), num(y));
    const double step = nice_step(x.hi - x.lo, 8);
    const auto first = static_cast<long>(std::ceil(x.lo / step));
    const auto last = static_cast<long>(std::floor(x.hi / step + 1e-9));
    for (long i = first; i <= last; ++i) {
        const double v = static_cast<double>(i) * step;
        c.add("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\" stroke-width=\"1\"/>",
              num(x(v)), num(y), num(y + 5.0));
        c.add("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>", num(x(v)), num(y + 17.0),
              tick_label(v));
    }
}

} // namespace

double freedman_diaconis_width(std::span<const double> values)
{
    if (values.empty()) {
        throw std::invalid_argument("histogram of an empty sample");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_interp(sorted, 0.75) - quantile_interp(sorted, 0.25);
    const double fd = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    const double range = sorted.back() - std::min(0.0, sorted.front());
    return std::max({fd, range / static_cast<double>(kMaxBins), kMinBinWidth});
}

Histogram make_histogram(std::span<const double> values)
{
    return make_histogram(values, freedman_diaconis_width(values));
}

Histogram make_histogram(std::span<const double> values, double width)
{
    if (values.empty()) {
        throw std::invalid_argument("histogram of an empty sample");
    }
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw std::invalid_argument(fmt::format("bin width must be positive, got {}", width));
    }
    Histogram h;
    h.width = width;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    h.min = *lo;
    h.max = *hi;
    const double first = std::floor(h.min / width);
    const double last = std::floor(h.max / width);
    h.origin = first * width;
    h.counts.assign(static_cast<std::size_t>(last - first) + 1, 0);
    for (double v : values) {
        auto i = static_cast<std::size_t>(std::floor(v / width) - first);
        ++h.counts[std::min(i, h.counts.size() - 1)];
    }
    return h;
}

std::string render_queue_plot(const QueueOutcome& outcome, const PlotStyle& style)
{
    const auto& users = outcome.users;
    const auto& cfg = outcome.config;
    if (users.empty()) {
        throw std::invalid_argument("queue plot needs at least one user");
    }

    const std::size_t rows = users.size() + outcome.facilities.size() + 1;
    const double gap = style.gap > 0.0 ? style.gap : std::clamp(640.0 / static_cast<double>(rows), 4.0, 18.0);
    const double height = style.height > 0.0 ? style.height : kTop + kBottom + gap * static_cast<double>(rows + 1);

    double tmax = 0.0;
    for (const auto& u : users) {
        tmax = std::max({tmax, u.leave, u.initiation});
        if (u.arrive < cfg.close_arrive) {
            tmax = std::max(tmax, (u.served ? u.leave : u.initiation) + u.unserved);
        }
    }
    for (const auto& f : outcome.facilities) {
        tmax = std::max(tmax, f.end_service + (f.users_served > 0 ? cfg.revive : 0.0));
    }
    for (Time closure : {cfg.close_arrive, cfg.close_service, cfg.close_full}) {
        if (std::isfinite(closure)) {
            tmax = std::max(tmax, closure);
        }
    }
    if (!(tmax > 0.0)) {
        tmax = 1.0;
    }
    const Scale x{0.0, tmax, kLeft, style.width - kRight};
    auto row_y = [&](std::size_t row) { return kTop + gap * static_cast<double>(row + 1); };

    Canvas c;
    c.add("<text class=\"heading\" x=\"{}\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">Queuing process with {} "
          "service facilities with revival-time {}</text>",
          num(style.width / 2.0), cfg.facilities, tick_label(cfg.revive));

    const double rule_top = kTop;
    const double rule_bottom = row_y(rows - 1) + gap / 2.0;
    const std::pair<const char*, Time> closures[] = {
        {"close_arrive", cfg.close_arrive}, {"close_service", cfg.close_service}, {"close_full", cfg.close_full}};
    for (const auto& [kind, t] : closures) {
        if (std::isfinite(t)) {
            c.add("<line class=\"closure\" data-kind=\"{0}\" x1=\"{1}\" y1=\"{2}\" x2=\"{1}\" y2=\"{3}\" "
                  "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>",
                  kind, num(x(t)), num(rule_top), num(rule_bottom));
        }
    }

    const double w = style.line_width;
    for (std::size_t k = 0; k < users.size(); ++k) {
        const auto& u = users[k];
        const bool closed = u.arrive >= cfg.close_arrive;
        const double y = row_y(k);
        c.add("<g class=\"user{}\" data-user=\"{}\" data-served=\"{}\">", closed ? " closed" : "", k + 1,
              u.served ? 1 : 0);
        c.add("<text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"end\">user {}</text>", num(kLeft - 8.0),
              num(y + 3.0), k + 1);
        c.add("<circle class=\"arrival\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>", num(x(u.arrive)), num(y),
              num(std::max(1.5, w)));
        if (u.wait > 0.0) {
            c.add("<line class=\"wait\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"{4}\"/>",
                  num(x(u.arrive)), num(y), num(x(u.initiation)), style.wait_colour, num(w));
        }
        if (u.use > 0.0) {
            c.add("<line class=\"use\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"{4}\"/>",
                  num(x(u.initiation)), num(y), num(x(u.leave)), style.use_colour, num(w));
        }
        if (!closed) {
            const double from = u.served ? u.leave : u.initiation;
            if (u.unserved > 0.0) {
                c.add("<line class=\"unserved\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                      "stroke-width=\"{4}\" stroke-dasharray=\"3 2\"/>",
                      num(x(from)), num(y), num(x(from + u.unserved)), style.unserved_colour, num(w));
            }
            if (!u.served) {
                const double ax = x(u.initiation);
                c.add("<path class=\"abandon\" d=\"M {} {} L {} {} M {} {} L {} {}\" stroke=\"black\" "
                      "stroke-width=\"1\"/>",
                      num(ax - 3.0), num(y - 3.0), num(ax + 3.0), num(y + 3.0), num(ax - 3.0), num(y + 3.0),
                      num(ax + 3.0), num(y - 3.0));
            }
        }
        c.add("</g>");
    }

    for (std::size_t i = 0; i < outcome.facilities.size(); ++i) {
        const double y = row_y(users.size() + 1 + i);
        c.add("<g class=\"facility\" data-facility=\"{}\">", i + 1);
        c.add("<text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"end\">facility {}</text>", num(kLeft - 8.0),
              num(y + 3.0), i + 1);
        for (const auto& u : users) {
            if (u.facility != i + 1) {
                continue;
            }
            c.add("<line class=\"service\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                  "stroke-width=\"{4}\"/>",
                  num(x(u.initiation)), num(y), num(x(u.leave)), style.facility_use_colour, num(w + 2.0));
            if (cfg.revive > 0.0) {
                c.add("<line class=\"revival\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                      "stroke-width=\"{4}\"/>",
                      num(x(u.leave)), num(y), num(x(u.leave + cfg.revive)), style.revive_colour, num(w + 2.0));
            }
        }
        c.add("</g>");
    }

    time_axis(c, x, height - kBottom + 10.0);
    return document(style.width, height, "Queuing plot", c);
}

namespace {

void histogram_panel(Canvas& c, std::string_view name, std::span<const double> values, const PlotStyle& style,
                     double left, double top, double width, double height)
{
    c.add("<g class=\"panel\" data-metric=\"{}\" data-count=\"{}\">", name, values.size());
    c.add("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>", num(left + width / 2.0),
          num(top - 8.0), name);
    const double base = top + height;
    c.add("<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\" stroke-width=\"1\"/>",
          num(left), num(base), num(left + width));
    if (values.empty()) {
        c.add("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">no data</text>",
              num(left + width / 2.0), num(top + height / 2.0));
        c.add("</g>");
        return;
    }
    const Histogram h = make_histogram(values);
    const std::size_t peak = *std::max_element(h.counts.begin(), h.counts.end());
    const double bar_w = width / static_cast<double>(h.counts.size());
    c.add("<desc>bins={} width={} origin={} min={} max={}</desc>", h.counts.size(), fmt::format("{:.9g}", h.width),
          fmt::format("{:.9g}", h.origin), fmt::format("{:.9g}", h.min), fmt::format("{:.9g}", h.max));
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double bh = height * static_cast<double>(h.counts[i]) / static_cast<double>(peak);
        c.add("<rect class=\"bar\" data-count=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" "
              "stroke=\"white\" stroke-width=\"0.5\"/>",
              h.counts[i], num(left + bar_w * static_cast<double>(i)), num(base - bh), num(bar_w), num(bh),
              style.bar_colour);
    }
    c.add("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"start\">{}</text>", num(left), num(base + 14.0),
          tick_label(h.origin));
    c.add("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>", num(left + width),
          num(base + 14.0), tick_label(h.upper(h.counts.size() - 1)));
    c.add("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>", num(left - 4.0),
          num(top + 8.0), peak);
    c.add("</g>");
}

} // namespace

std::string render_summary_plot(const QueueOutcome& outcome, const PlotStyle& style)
{
    if (outcome.users.empty()) {
        throw std::invalid_argument("summary plot needs at least one user");
    }
    const double height = style.height > 0.0 ? style.height : 600.0;
    const double panel_w = (style.width - kLeft - kRight - 60.0) / 2.0;
    const double panel_h = (height - kTop - kBottom - 60.0) / 2.0;

    Canvas c;
    c.add("<text class=\"heading\" x=\"{}\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">Queuing summary with {} "
          "service facilities with revival-time {}</text>",
          num(style.width / 2.0), outcome.config.facilities, tick_label(outcome.config.revive));
    const Metric panels[] = {Metric::wait, Metric::use, Metric::unserved, Metric::use_prop};
    for (std::size_t p = 0; p < 4; ++p) {
        const double left = kLeft + static_cast<double>(p % 2) * (panel_w + 60.0);
        const double top = kTop + 10.0 + static_cast<double>(p / 2) * (panel_h + 60.0);
        const auto values = metric_values(outcome.users, panels[p]);
        histogram_panel(c, metric_name(panels[p]), values, style, left, top, panel_w, panel_h);
    }
    return document(style.width, height, "Queuing summary plot", c);
}

std::string render_distributions(std::span<const DistributionSeries> series, std::string_view metric,
                                 const PlotStyle& style)
{
    if (series.empty()) {
        throw std::invalid_argument("distribution plot needs at least one facility count");
    }
    std::vector<double> pooled;
    for (const auto& s : series) {
        if (s.values.size() < 2) {
            throw std::invalid_argument(
                fmt::format("distribution for {} facilities needs at least 2 samples", s.facilities));
        }
        pooled.insert(pooled.end(), s.values.begin(), s.values.end());
    }
    const Histogram all = make_histogram(pooled);

    std::vector<double> means;
    std::vector<Histogram> hists;
    double peak_density = 0.0;
    for (const auto& s : series) {
        Histogram h = make_histogram(s.values, all.width);
        double sum = 0.0;
        for (double v : s.values) {
            sum += v;
        }
        means.push_back(sum / static_cast<double>(s.values.size()));
        for (std::size_t count : h.counts) {
            peak_density = std::max(peak_density, static_cast<double>(count) /
                                                      (static_cast<double>(s.values.size()) * h.width));
        }
        hists.push_back(std::move(h));
    }
    const auto best = static_cast<std::size_t>(std::min_element(means.begin(), means.end()) - means.begin());

    const double facet_h = style.gap > 0.0 ? style.gap : 60.0;
    const double height =
        style.height > 0.0 ? style.height : kTop + kBottom + 10.0 + facet_h * static_cast<double>(series.size());
    const Scale x{all.origin, all.upper(all.counts.size() - 1), kLeft, style.width - kRight};

    Canvas c;
    c.add("<text class=\"heading\" x=\"{}\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">Distributions of {} by "
          "number of facilities</text>",
          num(style.width / 2.0), metric);
    for (std::size_t j = 0; j < series.size(); ++j) {
        const auto& s = series[j];
        const auto& h = hists[j];
        const double base = kTop + facet_h * static_cast<double>(j + 1);
        const double scale = (facet_h - 8.0) / peak_density;
        c.add("<g class=\"facet{}\" data-facilities=\"{}\" data-mean=\"{}\">", j == best ? " min-mean" : "",
              s.facilities, fmt::format("{:.9g}", means[j]));
        c.add("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">n = {}</text>", num(kLeft - 8.0),
              num(base - 4.0), s.facilities);
        c.add("<line class=\"axis\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#cccccc\" stroke-width=\"1\"/>",
              num(x.px_lo), num(base), num(x.px_hi));
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            if (h.counts[i] == 0) {
                continue;
            }
            const double density =
                static_cast<double>(h.counts[i]) / (static_cast<double>(s.values.size()) * h.width);
            const double bh = density * scale;
            const double x0 = x(h.lower(i));
            const double x1 = x(h.upper(i));
            c.add("<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>", num(x0),
                  num(base - bh), num(std::max(x1 - x0, 0.5)), num(bh), style.bar_colour);
        }
        c.add("<line class=\"mean\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\" stroke-width=\"{3}\"/>",
              num(x(means[j])), num(base), num(base - facet_h + 8.0), num(style.line_width / 2.0));
        c.add("</g>");
    }
    time_axis(c, x, height - kBottom + 10.0);
    return document(style.width, height, fmt::format("Distributions of {}", metric), c);
}

} // namespace queuesim
