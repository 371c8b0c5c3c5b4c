#include "queuesim/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

namespace queuesim::io {

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what)
{
    const std::string t = trim(text);
    const std::string l = lower(t);
    if (l == "inf" || l == "+inf" || l == "infinity") {
        return kInfinity;
    }
    double v = 0.0;
    const auto* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (ec != std::errc{} || ptr != end || t.empty()) {
        throw FormatError(fmt::format("cannot read {} from '{}'", what, text));
    }
    return v;
}

const json& require(const json& doc, std::string_view key)
{
    if (!doc.is_object()) {
        throw FormatError(fmt::format("expected an object holding '{}'", key));
    }
    auto it = doc.find(std::string(key));
    if (it == doc.end()) {
        throw FormatError(fmt::format("missing field '{}'", key));
    }
    return *it;
}

const json* optional_field(const json& doc, std::string_view key)
{
    auto it = doc.find(std::string(key));
    return it == doc.end() || it->is_null() ? nullptr : &*it;
}

std::size_t parse_count(const json& value, std::string_view field)
{
    if (value.is_number_unsigned()) {
        return value.get<std::size_t>();
    }
    if (value.is_number_integer()) {
        throw FormatError(fmt::format("'{}' must be non-negative", field));
    }
    if (value.is_number_float()) {
        const double d = value.get<double>();
        if (d >= 0.0 && std::floor(d) == d && d < 1e15) {
            return static_cast<std::size_t>(d);
        }
    }
    throw FormatError(fmt::format("'{}' must be a non-negative integer", field));
}

std::vector<double> parse_times(const json& value, std::string_view field)
{
    if (!value.is_array()) {
        throw FormatError(fmt::format("'{}' must be an array", field));
    }
    std::vector<double> out;
    out.reserve(value.size());
    for (const auto& v : value) {
        out.push_back(parse_time(v, field));
    }
    return out;
}

json times_json(const std::vector<double>& values)
{
    json arr = json::array();
    for (double v : values) {
        arr.push_back(time_json(v));
    }
    return arr;
}

const char* na_or(const std::optional<std::size_t>& f, std::string& buf)
{
    if (!f) {
        return "NA";
    }
    buf = std::to_string(*f);
    return buf.c_str();
}

} // namespace

double parse_time(const json& value, std::string_view field)
{
    if (value.is_number()) {
        return value.get<double>();
    }
    if (value.is_string()) {
        return parse_double(value.get<std::string>(), field);
    }
    throw FormatError(fmt::format("'{}' must be a number or \"inf\"", field));
}

json time_json(double value)
{
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (std::isnan(value)) {
        return nullptr;
    }
    return value;
}

PatienceSpec parse_patience(const json& doc)
{
    const std::string type = require(doc, "type").get<std::string>();
    if (type == "matrix") {
        const json& rows = require(doc, "rows");
        if (!rows.is_array()) {
            throw FormatError("'rows' must be an array of arrays");
        }
        ExplicitMatrix m;
        for (const auto& row : rows) {
            m.rows.push_back(parse_times(row, "rows"));
        }
        return m;
    }
    if (type == "exp-decay") {
        const json* scale = optional_field(doc, "scale");
        const json* shape = optional_field(doc, "shape");
        return ExpDecay{parse_time(scale ? *scale : require(doc, "alpha"), "scale"),
                        parse_time(shape ? *shape : require(doc, "beta"), "shape")};
    }
    if (type == "queue-cap") {
        const json* cap = optional_field(doc, "capacity");
        return QueueCap{parse_count(cap ? *cap : require(doc, "s"), "capacity")};
    }
    if (type == "constant") {
        return Constant{parse_time(require(doc, "value"), "value")};
    }
    throw FormatError(fmt::format("unknown patience type '{}'", type));
}

json to_json(const PatienceSpec& spec)
{
    json j;
    j["type"] = patience_kind(spec);
    if (const auto* m = std::get_if<ExplicitMatrix>(&spec)) {
        json rows = json::array();
        for (const auto& row : m->rows) {
            rows.push_back(times_json(row));
        }
        j["rows"] = rows;
    }
    else if (const auto* d = std::get_if<ExpDecay>(&spec)) {
        j["scale"] = time_json(d->scale);
        j["shape"] = time_json(d->shape);
    }
    else if (const auto* c = std::get_if<QueueCap>(&spec)) {
        j["capacity"] = c->capacity;
    }
    else if (const auto* k = std::get_if<Constant>(&spec)) {
        j["value"] = time_json(k->value);
    }
    return j;
}

AmenityConfig parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw FormatError("'config' must be an object");
    }
    AmenityConfig c;
    c.facilities = parse_count(require(doc, "n"), "n");
    if (const json* v = optional_field(doc, "revive")) {
        c.revive = parse_time(*v, "revive");
    }
    if (const json* v = optional_field(doc, "close_arrive")) {
        c.close_arrive = parse_time(*v, "close_arrive");
    }
    if (const json* v = optional_field(doc, "close_full")) {
        c.close_full = parse_time(*v, "close_full");
    }
    const json* service = optional_field(doc, "close_service");
    c.close_service = std::min(service ? parse_time(*service, "close_service") : kInfinity, c.close_full);
    if (const json* v = optional_field(doc, "initial_delays")) {
        c.initial_delays = parse_times(*v, "initial_delays");
    }
    return c;
}

json to_json(const AmenityConfig& config)
{
    json j;
    j["n"] = config.facilities;
    j["revive"] = time_json(config.revive);
    j["close_arrive"] = time_json(config.close_arrive);
    j["close_service"] = time_json(config.close_service);
    j["close_full"] = time_json(config.close_full);
    if (!config.initial_delays.empty()) {
        j["initial_delays"] = times_json(config.initial_delays);
    }
    return j;
}

QueueInputs parse_queue_inputs(const json& doc)
{
    QueueInputs in;
    in.arrive = parse_times(require(doc, "arrive"), "arrive");
    in.use_full = parse_times(require(doc, "use_full"), "use_full");
    if (const json* p = optional_field(doc, "patience")) {
        in.patience = parse_patience(*p);
    }
    in.config = parse_config(require(doc, "config"));
    return in;
}

json to_json(const QueueInputs& inputs)
{
    json j;
    j["arrive"] = times_json(inputs.arrive);
    j["use_full"] = times_json(inputs.use_full);
    j["patience"] = to_json(inputs.patience);
    j["config"] = to_json(inputs.config);
    return j;
}

GenerativeModel parse_model(const json& doc)
{
    GenerativeModel m;
    m.arrival_rate = parse_time(require(doc, "lambda"), "lambda");
    m.mean_use = parse_time(require(doc, "mu"), "mu");
    if (const json* p = optional_field(doc, "patience")) {
        m.patience = parse_patience(*p);
    }
    m.config = parse_config(require(doc, "config"));
    if (const json* b = optional_field(doc, "burn_in")) {
        m.burn_in = parse_time(*b, "burn_in");
    }
    if (const json* c = optional_field(doc, "max_users")) {
        m.max_users = parse_count(*c, "max_users");
    }
    return m;
}

json to_json(const GenerativeModel& model)
{
    json j;
    j["lambda"] = time_json(model.arrival_rate);
    j["mu"] = time_json(model.mean_use);
    j["patience"] = to_json(model.patience);
    j["config"] = to_json(model.config);
    j["burn_in"] = time_json(model.burn_in);
    if (model.max_users) {
        j["max_users"] = *model.max_users;
    }
    return j;
}

json to_json(const QueueOutcome& outcome)
{
    json j;
    j["config"] = to_json(outcome.config);
    json users = json::array();
    for (std::size_t k = 0; k < outcome.users.size(); ++k) {
        const auto& u = outcome.users[k];
        json r;
        r["user"] = k + 1;
        r["arrive"] = u.arrive;
        r["wait"] = u.wait;
        r["use"] = u.use;
        r["use_full"] = u.use_full;
        r["unserved"] = u.unserved;
        r["initiation"] = u.initiation;
        r["leave"] = u.leave;
        r["served"] = u.served;
        r["facility"] = u.facility ? json(*u.facility) : json(nullptr);
        users.push_back(std::move(r));
    }
    j["users"] = std::move(users);
    json facilities = json::array();
    for (std::size_t i = 0; i < outcome.facilities.size(); ++i) {
        const auto& f = outcome.facilities[i];
        facilities.push_back({{"facility", i + 1},
                              {"open", f.open},
                              {"end_service", f.end_service},
                              {"use", f.use},
                              {"revive", f.revive},
                              {"users_served", f.users_served}});
    }
    j["facilities"] = std::move(facilities);
    if (outcome.forward_priorities) {
        j["forward_priorities"] = *outcome.forward_priorities;
    }
    return j;
}

QueueOutcome parse_outcome(const json& doc)
{
    QueueOutcome out;
    out.config = parse_config(require(doc, "config"));
    const json& users = require(doc, "users");
    if (!users.is_array()) {
        throw FormatError("'users' must be an array");
    }
    for (const auto& r : users) {
        UserRecord u;
        u.arrive = parse_time(require(r, "arrive"), "arrive");
        u.wait = parse_time(require(r, "wait"), "wait");
        u.use = parse_time(require(r, "use"), "use");
        u.use_full = parse_time(require(r, "use_full"), "use_full");
        u.unserved = parse_time(require(r, "unserved"), "unserved");
        u.initiation = parse_time(require(r, "initiation"), "initiation");
        u.leave = parse_time(require(r, "leave"), "leave");
        u.served = require(r, "served").get<bool>();
        if (const json* f = optional_field(r, "facility")) {
            u.facility = parse_count(*f, "facility");
        }
        out.users.push_back(u);
    }
    const json& facilities = require(doc, "facilities");
    if (!facilities.is_array()) {
        throw FormatError("'facilities' must be an array");
    }
    for (const auto& r : facilities) {
        FacilityRecord f;
        f.open = parse_time(require(r, "open"), "open");
        f.end_service = parse_time(require(r, "end_service"), "end_service");
        f.use = parse_time(require(r, "use"), "use");
        f.revive = parse_time(require(r, "revive"), "revive");
        f.users_served = parse_count(require(r, "users_served"), "users_served");
        out.facilities.push_back(f);
    }
    if (const json* fp = optional_field(doc, "forward_priorities")) {
        out.forward_priorities = fp->get<std::vector<std::vector<std::size_t>>>();
    }
    return out;
}

CostSpec parse_costs(std::string_view text)
{
    CostSpec costs;
    bool seen[3] = {false, false, false};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw FormatError(fmt::format("cost entry '{}' is not key=value", item));
        }
        const std::string key = lower(trim(item.substr(0, eq)));
        const double value = parse_double(item.substr(eq + 1), key);
        if (key == "facility") {
            costs.facility = value;
            seen[0] = true;
        }
        else if (key == "wait") {
            costs.wait = value;
            seen[1] = true;
        }
        else if (key == "unserved") {
            costs.unserved = value;
            seen[2] = true;
        }
        else {
            throw FormatError(fmt::format("unknown cost '{}'", key));
        }
        pos = comma + 1;
    }
    if (!(seen[0] && seen[1] && seen[2])) {
        throw FormatError("costs need facility=, wait= and unserved=");
    }
    return costs;
}

std::pair<std::size_t, std::size_t> parse_range(std::string_view text)
{
    auto read = [&](std::string_view part) {
        const std::string t = trim(part);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
            throw FormatError(fmt::format("cannot read facility count from '{}'", part));
        }
        return v;
    };
    const std::size_t dots = text.find("..");
    if (dots == std::string_view::npos) {
        const std::size_t v = read(text);
        return {v, v};
    }
    return {read(text.substr(0, dots)), read(text.substr(dots + 2))};
}

std::vector<double> parse_probs(std::string_view text)
{
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const double p = parse_double(text.substr(pos, comma - pos), "probability");
        if (!(p >= 0.0 && p <= 1.0)) {
            throw FormatError(fmt::format("probability {} outside [0, 1]", p));
        }
        out.push_back(p);
        pos = comma + 1;
    }
    return out;
}

std::string csv_number(double value)
{
    if (std::isnan(value)) {
        return "NA";
    }
    if (std::isinf(value)) {
        return value > 0 ? "Inf" : "-Inf";
    }
    return fmt::format("{}", value);
}

std::string users_csv(const QueueOutcome& outcome)
{
    std::string out = "user,arrive,wait,use,leave,unserved,facility\n";
    std::string buf;
    for (std::size_t k = 0; k < outcome.users.size(); ++k) {
        const auto& u = outcome.users[k];
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{}\n", k + 1, csv_number(u.arrive),
                       csv_number(u.wait), csv_number(u.use), csv_number(u.leave), csv_number(u.unserved),
                       na_or(u.facility, buf));
    }
    return out;
}

std::string facilities_csv(const QueueOutcome& outcome)
{
    std::string out = "facility,open,end_service,use,revive\n";
    for (std::size_t i = 0; i < outcome.facilities.size(); ++i) {
        const auto& f = outcome.facilities[i];
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", i + 1, csv_number(f.open),
                       csv_number(f.end_service), csv_number(f.use), csv_number(f.revive));
    }
    return out;
}

namespace {

std::string quantile_label(double p) { return fmt::format("Quantile[{:.2f}]", p); }

} // namespace

std::string summary_csv(const SummaryTable& table)
{
    std::string out = "statistic";
    for (Metric m : kAllMetrics) {
        out += ',';
        out += metric_name(m);
    }
    out += '\n';
    auto row = [&](const std::string& label, auto get) {
        out += label;
        for (Metric m : kAllMetrics) {
            out += ',';
            out += csv_number(get(table.at(m)));
        }
        out += '\n';
    };
    row("Mean", [](const MetricSummary& s) { return s.mean; });
    row("Std.Dev", [](const MetricSummary& s) { return s.sd; });
    for (std::size_t q = 0; q < table.probs.size(); ++q) {
        row(quantile_label(table.probs[q]), [q](const MetricSummary& s) { return s.quantiles[q]; });
    }
    return out;
}

namespace {

double mean_of(const std::vector<double>& xs)
{
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    return xs.empty() ? std::nan("") : sum / static_cast<double>(xs.size());
}

} // namespace

std::string risk_csv(const RiskSweep& sweep)
{
    std::string out = "facilities,risk,mean_wait,mean_use,mean_unserved\n";
    for (const auto& p : sweep.points) {
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", p.facilities, csv_number(p.risk),
                       csv_number(mean_of(p.mean_wait)), csv_number(mean_of(p.mean_use)),
                       csv_number(mean_of(p.mean_unserved)));
    }
    return out;
}

std::string replicates_csv(const RiskSweep& sweep)
{
    const bool with_loss = !sweep.points.empty() && !sweep.points.front().loss.empty();
    std::string out = with_loss ? "facilities,replicate,loss,mean_wait,mean_use,mean_unserved\n"
                                : "facilities,replicate,mean_wait,mean_use,mean_unserved\n";
    for (const auto& p : sweep.points) {
        for (std::size_t r = 0; r < p.mean_wait.size(); ++r) {
            if (with_loss) {
                fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", p.facilities, r + 1,
                               csv_number(p.loss[r]), csv_number(p.mean_wait[r]), csv_number(p.mean_use[r]),
                               csv_number(p.mean_unserved[r]));
            }
            else {
                fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", p.facilities, r + 1,
                               csv_number(p.mean_wait[r]), csv_number(p.mean_use[r]),
                               csv_number(p.mean_unserved[r]));
            }
        }
    }
    return out;
}

std::string steady_state_csv(const SteadyStateResult& result)
{
    std::string out = "replicate,users,mean_wait,mean_use,mean_unserved\n";
    for (std::size_t r = 0; r < result.replicates.size(); ++r) {
        const auto& m = result.replicates[r];
        const double nan = std::nan("");
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", r + 1, m.users,
                       csv_number(m.users ? m.wait : nan), csv_number(m.users ? m.use : nan),
                       csv_number(m.users ? m.unserved : nan));
    }
    return out;
}

namespace {

std::string closure_text(Time t) { return std::isinf(t) ? "Inf" : fmt::format("{:g}", t); }

std::string config_header(const AmenityConfig& c)
{
    std::string out;
    fmt::format_to(std::back_inserter(out), "Model of an amenity with {} service facilities with revival-time {:g}\n",
                   c.facilities, c.revive);
    fmt::format_to(std::back_inserter(out), "Service facilities close to new arrivals at closure-time = {}\n",
                   closure_text(c.close_arrive));
    fmt::format_to(std::back_inserter(out), "Service facilities close to new services at closure-time = {}\n",
                   closure_text(c.close_service));
    fmt::format_to(std::back_inserter(out), "Service facilities end existing services at closure-time = {}\n",
                   closure_text(c.close_full));
    out += "\nUsers are allocated to facilities on a 'first-come first-served' basis\n";
    return out;
}

} // namespace

std::string format_queue_report(const QueueOutcome& outcome)
{
    std::string out = "Queue Information\n\n";
    out += config_header(outcome.config);
    out += "\n-----\n\nUser information\n\n";
    fmt::format_to(std::back_inserter(out), "{:<10}{:>12}{:>12}{:>12}{:>12}{:>12}{:>5}\n", "", "arrive", "wait",
                   "use", "leave", "unserved", "F");
    for (std::size_t k = 0; k < outcome.users.size(); ++k) {
        const auto& u = outcome.users[k];
        fmt::format_to(std::back_inserter(out), "{:<10}{:>12.6f}{:>12.6f}{:>12.6f}{:>12.6f}{:>12.7g}{:>5}\n",
                       fmt::format("user[{}]", k + 1), u.arrive, u.wait, u.use, u.leave, u.unserved,
                       u.facility ? std::to_string(*u.facility) : std::string("NA"));
    }
    out += "\n-----\n\nFacility information\n\n";
    fmt::format_to(std::back_inserter(out), "{:<8}{:>12}{:>14}{:>12}{:>10}\n", "", "open", "end.service", "use",
                   "revive");
    for (std::size_t i = 0; i < outcome.facilities.size(); ++i) {
        const auto& f = outcome.facilities[i];
        fmt::format_to(std::back_inserter(out), "{:<8}{:>12.7g}{:>14.7g}{:>12.7g}{:>10.7g}\n",
                       fmt::format("F[{}]", i + 1), f.open, f.end_service, f.use, f.revive);
    }
    return out;
}

std::string format_summary_report(const SummaryTable& table, const AmenityConfig& config)
{
    std::string out = "Summary Statistics for a Queuing Process\n\n";
    out += config_header(config);
    out += "\n-----\n\n";
    fmt::format_to(std::back_inserter(out), "{:<16}", "");
    for (Metric m : kAllMetrics) {
        fmt::format_to(std::back_inserter(out), "{:>12}", metric_name(m));
    }
    out += '\n';
    auto row = [&](const std::string& label, auto get) {
        fmt::format_to(std::back_inserter(out), "{:<16}", label);
        for (Metric m : kAllMetrics) {
            fmt::format_to(std::back_inserter(out), "{:>12.7f}", get(table.at(m)));
        }
        out += '\n';
    };
    row("Mean", [](const MetricSummary& s) { return s.mean; });
    row("Std.Dev", [](const MetricSummary& s) { return s.sd; });
    for (std::size_t q = 0; q < table.probs.size(); ++q) {
        row(quantile_label(table.probs[q]), [q](const MetricSummary& s) { return s.quantiles[q]; });
    }
    return out;
}

} // namespace queuesim::io
