// queuesim: command-line front end for the queue engine.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "queuesim/io.hpp"
#include "queuesim/queue.hpp"
#include "queuesim/render.hpp"
#include "queuesim/risk.hpp"
#include "queuesim/summary.hpp"

using namespace queuesim;
using io::json;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CliError(fmt::format("cannot open '{}'", path));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path)
{
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw io::FormatError(fmt::format("malformed JSON in '{}': {}", path, e.what()));
    }
}

// "-" writes to standard output.
void write_file(const std::string& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
        throw CliError(fmt::format("cannot write '{}'", path));
    }
}

std::string with_newline(std::string s)
{
    if (s.empty() || s.back() != '\n') {
        s += '\n';
    }
    return s;
}

void emit_error(const std::string& kind, const std::string& message, const std::vector<std::string>& details = {})
{
    json j;
    j["error"] = kind;
    j["message"] = message;
    j["details"] = details;
    std::cerr << j.dump() << '\n';
}

void warn(const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings) {
        std::cerr << json{{"warning", w}}.dump() << '\n';
    }
}

struct Args {
    std::string input;
    std::string outcome;
    std::string output;
    std::string svg;
    std::string model;
    std::string users_csv;
    std::string facilities_csv;
    std::string replicates_csv;
    std::string probs;
    std::string costs;
    std::string facilities;
    std::string kind = "queue";
    std::string metric;
    std::size_t sims = 10000;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    bool independent_seeds = false;
    bool forward_priorities = false;
    bool steady_state = false;
    std::optional<double> burn_in;
    std::optional<std::size_t> max_users;
    std::optional<double> run_length;
    PlotStyle style;
};

QueueOutcome load_outcome(const Args& a)
{
    if (!a.outcome.empty()) {
        return io::parse_outcome(read_json(a.outcome));
    }
    if (a.input.empty()) {
        throw CliError("one of --input or --outcome is required");
    }
    const QueueInputs inputs = io::parse_queue_inputs(read_json(a.input));
    const auto report = validate_inputs(inputs);
    warn(report.warnings);
    if (!report.ok()) {
        throw InvalidInputs(report.errors);
    }
    return run_queue(inputs, RunOptions{a.forward_priorities});
}

int cmd_run(const Args& a)
{
    const QueueOutcome outcome = load_outcome(a);
    if (!a.output.empty()) {
        write_file(a.output, with_newline(io::to_json(outcome).dump(2)));
    }
    if (!a.users_csv.empty()) {
        write_file(a.users_csv, io::users_csv(outcome));
    }
    if (!a.facilities_csv.empty()) {
        write_file(a.facilities_csv, io::facilities_csv(outcome));
    }
    if (!a.svg.empty()) {
        write_file(a.svg, render_queue_plot(outcome, a.style));
    }
    if (a.output.empty() && a.users_csv.empty() && a.facilities_csv.empty() && a.svg.empty()) {
        std::cout << io::format_queue_report(outcome);
    }
    return 0;
}

int cmd_summary(const Args& a)
{
    const QueueOutcome outcome = load_outcome(a);
    const std::vector<double> probs = a.probs.empty() ? default_probs() : io::parse_probs(a.probs);
    const SummaryTable table = summarize(outcome, probs);
    if (!a.output.empty()) {
        write_file(a.output, io::summary_csv(table));
    }
    if (!a.svg.empty()) {
        write_file(a.svg, render_summary_plot(outcome, a.style));
    }
    if (a.output.empty() && a.svg.empty()) {
        std::cout << io::format_summary_report(table, outcome.config);
    }
    return 0;
}

int cmd_plot(const Args& a)
{
    const QueueOutcome outcome = load_outcome(a);
    if (a.kind == "queue") {
        write_file(a.svg, render_queue_plot(outcome, a.style));
    }
    else if (a.kind == "summary") {
        write_file(a.svg, render_summary_plot(outcome, a.style));
    }
    else {
        throw CliError(fmt::format("unknown plot kind '{}'", a.kind));
    }
    return 0;
}

GenerativeModel load_model(const Args& a)
{
    GenerativeModel model = io::parse_model(read_json(a.model));
    if (a.burn_in) {
        model.burn_in = *a.burn_in;
    }
    if (a.max_users) {
        model.max_users = *a.max_users;
    }
    return model;
}

SimulationOptions sim_options(const Args& a)
{
    SimulationOptions o;
    o.replicates = a.sims;
    o.seed = *a.seed;
    o.workers = a.workers;
    o.independent_seeds = a.independent_seeds;
    return o;
}

std::vector<double> sweep_metric(const FacilityPoint& p, const std::string& metric)
{
    if (metric == "loss") {
        if (p.loss.empty()) {
            throw CliError("metric 'loss' needs costs");
        }
        return p.loss;
    }
    if (metric == "mean_wait") {
        return p.mean_wait;
    }
    if (metric == "mean_use") {
        return p.mean_use;
    }
    if (metric == "mean_unserved") {
        return p.mean_unserved;
    }
    throw CliError(fmt::format("unknown metric '{}'", metric));
}

void write_sweep(const Args& a, const RiskSweep& sweep, const std::string& metric)
{
    if (!a.output.empty()) {
        write_file(a.output, io::risk_csv(sweep));
    }
    if (!a.replicates_csv.empty()) {
        write_file(a.replicates_csv, io::replicates_csv(sweep));
    }
    if (!a.svg.empty()) {
        std::vector<DistributionSeries> series;
        for (const auto& p : sweep.points) {
            series.push_back({p.facilities, sweep_metric(p, metric)});
        }
        write_file(a.svg, render_distributions(series, metric, a.style));
    }
}

std::pair<std::size_t, std::size_t> facility_range(const Args& a, const GenerativeModel& model)
{
    if (a.facilities.empty()) {
        return {model.config.facilities, model.config.facilities};
    }
    return io::parse_range(a.facilities);
}

int cmd_simulate(const Args& a)
{
    GenerativeModel model = load_model(a);
    if (a.steady_state) {
        SteadyStateOptions o;
        o.simulation = sim_options(a);
        if (a.run_length) {
            o.run_length = *a.run_length;
        }
        const auto [first, last] = facility_range(a, model);
        if (first != last) {
            throw CliError("steady-state runs take a single facility count");
        }
        model.config.facilities = first;
        const SteadyStateResult result = steady_state_metrics(model, o);
        const std::string csv = io::steady_state_csv(result);
        write_file(a.output.empty() ? "-" : a.output, csv);
        const UserMeans avg = result.average();
        std::cerr << json{{"replicates", result.replicates.size()},
                          {"empty_replicates", result.empty_replicates},
                          {"mean_wait", io::time_json(avg.users ? avg.wait : NAN)},
                          {"mean_use", io::time_json(avg.users ? avg.use : NAN)},
                          {"mean_unserved", io::time_json(avg.users ? avg.unserved : NAN)}}
                         .dump()
                  << '\n';
        return 0;
    }
    const auto [first, last] = facility_range(a, model);
    const RiskSweep sweep = simulate_facilities(model, first, last, sim_options(a));
    write_sweep(a, sweep, a.metric.empty() ? "mean_wait" : a.metric);
    if (a.output.empty()) {
        std::cout << io::risk_csv(sweep);
    }
    return 0;
}

int cmd_optimize(const Args& a)
{
    const GenerativeModel model = load_model(a);
    const CostSpec costs = io::parse_costs(a.costs);
    const auto [first, last] = facility_range(a, model);
    const RiskSweep sweep = optimize_facilities(model, costs, first, last, sim_options(a));
    write_sweep(a, sweep, a.metric.empty() ? "loss" : a.metric);
    std::cout << fmt::format("argmin {}\n", *sweep.argmin);
    std::cout << fmt::format("suggested_stop {}\n", suggested_stop(sweep));
    std::cout << io::risk_csv(sweep);
    return 0;
}

void add_style(CLI::App* app, Args& a)
{
    app->add_option("--line-width", a.style.line_width, "Stroke width of plotted segments")->check(CLI::PositiveNumber);
    app->add_option("--gap", a.style.gap, "Row spacing in pixels (0 = automatic)")->check(CLI::NonNegativeNumber);
    app->add_option("--width", a.style.width, "Image width in pixels")->check(CLI::PositiveNumber);
    app->add_option("--height", a.style.height, "Image height in pixels (0 = automatic)")
        ->check(CLI::NonNegativeNumber);
}

void add_queue_source(CLI::App* app, Args& a)
{
    auto* in = app->add_option("--input", a.input, "Queue inputs JSON");
    auto* out = app->add_option("--outcome", a.outcome, "Previously computed outcome JSON");
    in->excludes(out);
    app->add_flag("--forward-priorities", a.forward_priorities, "Record the forward queue-priority matrix");
}

void add_model(CLI::App* app, Args& a)
{
    app->add_option("--model", a.model, "Generative model JSON")->required();
    app->add_option("--seed", a.seed, "Master seed")->required();
    app->add_option("--sims", a.sims, "Replicates per facility count")->capture_default_str();
    app->add_option("--facilities", a.facilities, "Facility count or range A..B (default: model n)");
    app->add_option("--workers", a.workers, "Worker threads (0 = all cores)")->capture_default_str();
    app->add_flag("--independent-seeds", a.independent_seeds, "Fresh inputs for every facility count");
    app->add_option("--burn-in", a.burn_in, "Override the model burn-in")->check(CLI::NonNegativeNumber);
    app->add_option("--max-users", a.max_users, "Override the model cap on users per replicate");
    app->add_option("--output", a.output, "Per-facility-count CSV");
    app->add_option("--replicates-csv", a.replicates_csv, "Per-replicate CSV");
    app->add_option("--svg", a.svg, "Distribution plot");
    app->add_option("--metric", a.metric, "Plotted metric: loss, mean_wait, mean_use, mean_unserved");
    add_style(app, a);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Queue simulation with priority-dependent patience, revival and closures"};
    app.require_subcommand(1);
    Args a;

    auto* run = app.add_subcommand("run", "Evaluate a queue from an inputs file");
    add_queue_source(run, a);
    run->add_option("--output", a.output, "Outcome JSON (\"-\" for stdout)");
    run->add_option("--users-csv", a.users_csv, "User table CSV");
    run->add_option("--facilities-csv", a.facilities_csv, "Facility table CSV");
    run->add_option("--svg", a.svg, "Queue plot");
    add_style(run, a);

    auto* summary = app.add_subcommand("summary", "Summary statistics of a queue");
    add_queue_source(summary, a);
    summary->add_option("--probs", a.probs, "Comma separated quantile probabilities");
    summary->add_option("--output", a.output, "Summary CSV");
    summary->add_option("--svg", a.svg, "Summary histogram plot");
    add_style(summary, a);

    auto* plot = app.add_subcommand("plot", "Plot a queue");
    add_queue_source(plot, a);
    plot->add_option("--svg", a.svg, "Output SVG")->required();
    plot->add_option("--kind", a.kind, "queue or summary")->capture_default_str();
    add_style(plot, a);

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo metrics over facility counts");
    add_model(simulate, a);
    simulate->add_flag("--steady-state", a.steady_state, "Long-run metrics after burn-in for one facility count");
    simulate->add_option("--run-length", a.run_length, "Arrival horizon for steady-state runs")
        ->check(CLI::PositiveNumber);

    auto* optimize = app.add_subcommand("optimize", "Risk-minimising facility count");
    add_model(optimize, a);
    optimize->add_option("--costs", a.costs, "facility=F,wait=W,unserved=U")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 2;
    }

    try {
        if (*run) {
            return cmd_run(a);
        }
        if (*summary) {
            return cmd_summary(a);
        }
        if (*plot) {
            return cmd_plot(a);
        }
        if (*simulate) {
            return cmd_simulate(a);
        }
        return cmd_optimize(a);
    }
    catch (const InvalidInputs& e) {
        emit_error("invalid-inputs", "inputs failed validation", e.errors());
    }
    catch (const io::FormatError& e) {
        emit_error("format", e.what());
    }
    catch (const json::exception& e) {
        emit_error("format", e.what());
    }
    catch (const std::exception& e) {
        emit_error("failure", e.what());
    }
    return 1;
}
