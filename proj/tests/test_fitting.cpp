#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "gquench/fitting.hpp"

using namespace gquench;

namespace {

TimeSeries sampled(double dt, double t_max, const std::function<double(double)>& f,
                   double t0 = 0.0) {
    TimeSeries s;
    for (double t = t0; t <= t_max + 1e-12; t += dt) s.push(t, f(t));
    return s;
}

} // namespace

TEST_SUITE("fitting") {

TEST_CASE("time series validation") {
    TimeSeries ok;
    ok.push(0.0, 1.0);
    ok.push(1.0, 2.0);
    CHECK_NOTHROW(ok.validate());

    TimeSeries repeated = ok;
    repeated.push(1.0, 3.0);
    CHECK_THROWS_AS(repeated.validate(), std::domain_error);

    TimeSeries infinite = ok;
    infinite.push(2.0, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(infinite.validate(), std::domain_error);

    TimeSeries mismatched;
    mismatched.times = {0.0, 1.0};
    mismatched.values = {1.0};
    CHECK_THROWS_AS(mismatched.validate(), std::domain_error);
}

TEST_CASE("tail_from trims leading samples") {
    const TimeSeries s = sampled(1.0, 10.0, [](double t) { return t; });
    const TimeSeries tail = tail_from(s, 4.0);
    REQUIRE(tail.size() == 7);
    CHECK(tail.times.front() == 4.0);
    CHECK(tail.times.back() == 10.0);
}

TEST_CASE("period of a pure sinusoid") {
    const TimeSeries s =
        sampled(1e-3, 50.0, [](double t) { return std::sin(2.0 * M_PI * t / 5.0); });
    const double peak = estimate_period(s, PeriodMethod::peak_spacing);
    CHECK(std::abs(peak - 5.0) / 5.0 <= 0.005);
    const double fourier = estimate_period(s, PeriodMethod::fourier);
    CHECK(std::abs(fourier - 5.0) / 5.0 <= 0.005);
}

TEST_CASE("period estimate is sampling-rate independent") {
    for (double dt : {0.05, 0.02, 0.01, 0.005}) {
        const TimeSeries s =
            sampled(dt, 50.0, [](double t) { return std::sin(2.0 * M_PI * t / 5.0); });
        const double period = estimate_period(s);
        CHECK(std::abs(period - 5.0) / 5.0 <= 0.01);
    }
}

TEST_CASE("period estimation requires an oscillation") {
    const TimeSeries constant = sampled(0.1, 20.0, [](double) { return 3.0; });
    CHECK_THROWS_AS(estimate_period(constant), std::domain_error);
    CHECK_THROWS_AS(estimate_period(constant, PeriodMethod::fourier), std::domain_error);

    const TimeSeries monotone = sampled(0.1, 20.0, [](double t) { return 0.3 * t; });
    CHECK_THROWS_AS(estimate_period(monotone), std::domain_error);

    TimeSeries tiny;
    tiny.push(0.0, 0.0);
    tiny.push(1.0, 1.0);
    CHECK_THROWS_AS(estimate_period(tiny), std::domain_error);
}

TEST_CASE("exact logarithmic model is recovered") {
    const TimeSeries s =
        sampled(0.5, 200.0, [](double t) { return std::log(0.299 * t); }, 1.0);
    const FitResult fit = fit_log_model(s);
    CHECK(std::abs(fit.u - 1.0) <= 1e-6);
    CHECK(std::abs(fit.w - 0.299) <= 1e-6);
    CHECK(fit.z == 0.0);
    CHECK_FALSE(fit.degenerate);
    CHECK(adjusted_r_squared(s, fit) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("both fit modes report the canonical form") {
    const TimeSeries s =
        sampled(0.5, 100.0, [](double t) { return 0.7 * std::log(1.9 * t) + 0.0; }, 1.0);
    const FitResult a = fit_log_model(s, FitMode::fix_z_zero);
    const FitResult b = fit_log_model(s, FitMode::linear_intercept);
    CHECK(a.u == b.u);
    CHECK(a.w == b.w);
    CHECK(a.z == b.z);
}

TEST_CASE("fit depends only on the identifiable combination") {
    // u ln(w t) + z with (w, z) -> (w*k, z - u ln k) is the same curve
    const double u0 = 0.8;
    const auto curve = [&](double w, double z) {
        return sampled(0.25, 120.0, [=](double t) { return u0 * std::log(w * t) + z; }, 1.0);
    };
    const FitResult a = fit_log_model(curve(0.3, 0.0));
    const double k = 7.5;
    const FitResult b = fit_log_model(curve(0.3 * k, -u0 * std::log(k)));
    CHECK(a.u == doctest::Approx(b.u).epsilon(1e-12));
    CHECK(a.w == doctest::Approx(b.w).epsilon(1e-9));
    CHECK(a.z == b.z);
    // canonical combination u*ln w + z recovers the generating one
    CHECK(a.u * std::log(a.w) + a.z == doctest::Approx(u0 * std::log(0.3)).epsilon(1e-9));
}

TEST_CASE("constant series yields the degenerate flag") {
    const TimeSeries s = sampled(0.5, 50.0, [](double) { return 2.5; }, 1.0);
    const FitResult fit = fit_log_model(s);
    CHECK(fit.degenerate);
    CHECK(fit.u == 0.0);
    CHECK(fit.w == 1.0);
    CHECK_THROWS_AS(adjusted_r_squared(s, fit), std::domain_error);
}

TEST_CASE("noise around a constant has near-zero adjusted R^2") {
    std::mt19937 rng(42u);
    std::normal_distribution<double> noise(0.0, 0.1);
    TimeSeries s;
    for (double t = 1.0; t <= 200.0; t += 0.5) s.push(t, 3.0 + noise(rng));
    const FitResult fit = fit_log_model(s);
    CHECK(adjusted_r_squared(s, fit) <= 0.05);
}

TEST_CASE("fit residuals satisfy the normal equations") {
    std::mt19937 rng(7u);
    std::normal_distribution<double> noise(0.0, 0.2);
    TimeSeries s;
    for (double t = 1.0; t <= 150.0; t += 0.25) s.push(t, 1.3 * std::log(0.8 * t) + noise(rng));
    const FitResult fit = fit_log_model(s);

    double sum_r = 0.0;
    double sum_rx = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r = s.values[i] - fit.predict(s.times[i]);
        sum_r += r;
        sum_rx += r * std::log(s.times[i]);
    }
    const auto n = static_cast<double>(s.size());
    CHECK(std::abs(sum_r / n) <= 1e-10);
    CHECK(std::abs(sum_rx / n) <= 1e-10);
}

TEST_CASE("fit requires enough positive-time samples") {
    TimeSeries s;
    for (double t = 0.0; t < 0.9; t += 0.1) s.push(t - 0.5, 1.0);  // mostly t <= 0
    CHECK_THROWS_AS(fit_log_model(s), std::domain_error);

    TimeSeries few = sampled(1.0, 5.0, [](double t) { return std::log(t + 1.0); }, 1.0);
    CHECK_THROWS_AS(fit_log_model(few), std::domain_error);
}

TEST_CASE("the leading t = 0 sample is excluded from fits") {
    TimeSeries with_zero;
    with_zero.push(0.0, -100.0);  // would dominate if ln(0) were attempted
    for (double t = 1.0; t <= 40.0; t += 1.0) with_zero.push(t, 2.0 * std::log(t));
    const FitResult fit = fit_log_model(with_zero);
    CHECK(std::abs(fit.u - 2.0) <= 1e-9);
}

TEST_CASE("adjusted R^2 needs more samples than parameters") {
    TimeSeries s;
    s.push(1.0, 1.0);
    s.push(2.0, 2.0);
    s.push(3.0, 3.0);
    FitResult fit;
    fit.u = 1.0;
    CHECK_THROWS_AS(adjusted_r_squared(s, fit), std::domain_error);
}

} // TEST_SUITE
