#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "queuesim/generative.hpp"
#include "queuesim/queue.hpp"
#include "queuesim/random.hpp"

using namespace queuesim;

namespace {

// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf)
{
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

// Asymptotic critical value at significance 0.001.
double ks_critical(std::size_t n) { return 1.9495 / std::sqrt(static_cast<double>(n)); }

} // namespace

TEST_CASE("streams are reproducible and distinct")
{
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform01();
        CHECK(x == b.uniform01());
        differs_c |= x != c.uniform01();
        differs_d |= x != d.uniform01();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    CHECK(differs_c);
    CHECK(differs_d);
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("reference model is valid")
{
    const auto model = reference_model();
    CHECK(validate_model(model).empty());
    CHECK(model.arrival_rate == 1.5);
    CHECK(model.mean_use == 6.0);
    RandomStream s(1, 1);
    CHECK(validate_inputs(sample_inputs(model, s)).ok());
}

TEST_CASE("validate_model")
{
    auto model = reference_model();
    model.arrival_rate = 0.0;
    CHECK_FALSE(validate_model(model).empty());
    model = reference_model();
    model.mean_use = -1.0;
    CHECK_FALSE(validate_model(model).empty());
    model = reference_model();
    model.patience = ExplicitMatrix{{{1.0}}};
    CHECK_FALSE(validate_model(model).empty());
}

TEST_CASE("sample_inputs is deterministic")
{
    const auto model = reference_model();
    RandomStream a(99, 3), b(99, 3);
    CHECK(sample_inputs(model, a) == sample_inputs(model, b));
}

TEST_CASE("arrivals are sorted and before the horizon")
{
    for (std::uint64_t r = 1; r <= 500; ++r) {
        RandomStream s(5, r);
        const auto arrivals = sample_arrivals(1.5, 30.0, s);
        CHECK(std::is_sorted(arrivals.begin(), arrivals.end()));
        for (double t : arrivals) {
            CHECK(t > 0.0);
            CHECK(t < 30.0);
        }
    }
}

TEST_CASE("tiny horizon gives nearly empty inputs")
{
    auto model = reference_model();
    model.config.close_arrive = 0.001;
    std::size_t total = 0;
    for (std::uint64_t r = 1; r <= 100; ++r) {
        RandomStream s(2, r);
        total += sample_inputs(model, s).users();
    }
    CHECK(total <= 3);
}

TEST_CASE("arrival count has mean lambda times horizon")
{
    constexpr int reps = 10000;
    double sum = 0.0;
    for (int r = 1; r <= reps; ++r) {
        RandomStream s(11, static_cast<std::uint64_t>(r));
        sum += static_cast<double>(sample_arrivals(1.5, 30.0, s).size());
    }
    const double mean = sum / reps;
    const double se = std::sqrt(45.0 / reps);
    CHECK(std::abs(mean - 45.0) < 3.0 * se);
}

TEST_CASE("use-times")
{
    RandomStream s(3, 1);
    CHECK(sample_use_times(6.0, 0, s).empty());
    const auto draws = sample_use_times(6.0, 10000, s);
    double sum = 0.0;
    for (double u : draws) {
        CHECK(u > 0.0);
        CHECK(u < 12.0);
        sum += u;
    }
    const double se = 12.0 / std::sqrt(12.0) / std::sqrt(10000.0);
    CHECK(std::abs(sum / 10000.0 - 6.0) < 3.0 * se);
}

TEST_CASE("Kolmogorov-Smirnov on pooled draws")
{
    std::vector<double> gaps;
    std::vector<double> uses;
    for (std::uint64_t r = 1; gaps.size() < 100000; ++r) {
        RandomStream s(77, r);
        const auto arrivals = sample_arrivals(1.5, kInfinity, s, 1000);
        for (std::size_t i = 0; i < arrivals.size(); ++i) {
            gaps.push_back(i == 0 ? arrivals[0] : arrivals[i] - arrivals[i - 1]);
        }
    }
    RandomStream s(78, 1);
    uses = sample_use_times(6.0, 100000, s);
    CHECK(ks_statistic(gaps, [](double x) { return 1.0 - std::exp(-1.5 * x); }) < ks_critical(gaps.size()));
    CHECK(ks_statistic(uses, [](double x) { return x / 12.0; }) < ks_critical(uses.size()));
}

TEST_CASE("unbounded horizon requires a cap")
{
    RandomStream s(1, 1);
    CHECK_THROWS_AS((void)sample_arrivals(1.0, kInfinity, s), std::invalid_argument);
    CHECK(sample_arrivals(1.0, kInfinity, s, 25).size() == 25);
    auto model = reference_model();
    model.config.close_arrive = model.config.close_service = model.config.close_full = kInfinity;
    CHECK_THROWS((void)sample_inputs(model, s));
    model.max_users = 10;
    CHECK(sample_inputs(model, s).users() == 10);
}
