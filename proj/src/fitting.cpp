#include "gquench/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace gquench {

void TimeSeries::validate() const {
    if (times.size() != values.size()) {
        throw std::domain_error("time series has mismatched times/values lengths");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
            throw std::domain_error("time series contains non-finite samples");
        }
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw std::domain_error("time series times must be strictly increasing");
        }
    }
}

TimeSeries tail_from(const TimeSeries& series, double t_min) {
    TimeSeries out;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.times[i] >= t_min) out.push(series.times[i], series.values[i]);
    }
    return out;
}

namespace {

/// Centered moving average; the window is truncated symmetrically at the ends.
std::vector<double> moving_average(const std::vector<double>& v, std::size_t half_width) {
    if (half_width == 0) return v;
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i >= half_width) ? i - half_width : 0;
        const std::size_t hi = std::min(n - 1, i + half_width);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += v[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

double period_from_peaks(const TimeSeries& series) {
    const std::size_t n = series.size();
    const double span = series.times.back() - series.times.front();
    const double mean_dt = span / static_cast<double>(n - 1);
    const auto half_width = static_cast<std::size_t>(std::llround(0.005 * span / mean_dt));
    const std::vector<double> s = moving_average(series.values, half_width);

    std::vector<double> peak_times;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (s[i] > s[i - 1] && s[i] >= s[i + 1]) {
            peak_times.push_back(series.times[i]);
        }
    }
    if (peak_times.size() < 2) {
        throw std::domain_error("no oscillation detected: fewer than two maxima");
    }
    double spacing_sum = 0.0;
    for (std::size_t i = 1; i < peak_times.size(); ++i) {
        spacing_sum += peak_times[i] - peak_times[i - 1];
    }
    return spacing_sum / static_cast<double>(peak_times.size() - 1);
}

/// In-place radix-2 Cooley-Tukey; n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

double period_from_fourier(const TimeSeries& series) {
    const std::size_t n = series.size();
    const double mean =
        std::accumulate(series.values.begin(), series.values.end(), 0.0) / static_cast<double>(n);
    std::size_t n_fft = 1;
    while (n_fft < n) n_fft <<= 1;
    std::vector<std::complex<double>> a(n_fft, 0.0);
    for (std::size_t i = 0; i < n; ++i) a[i] = series.values[i] - mean;
    fft_pow2(a);

    const double mean_dt =
        (series.times.back() - series.times.front()) / static_cast<double>(n - 1);
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t k = 1; k <= n_fft / 2; ++k) {
        const double mag = std::abs(a[k]);
        if (mag > best_mag) {
            best_mag = mag;
            best = k;
        }
    }
    if (best == 0 || best_mag <= 0.0) {
        throw std::domain_error("no oscillation detected: empty spectrum");
    }
    // sub-bin refinement: parabola through the log magnitudes around the peak
    double offset = 0.0;
    if (best > 1 && best < n_fft / 2) {
        const double lo = std::log(std::abs(a[best - 1]) + 1e-300);
        const double mid = std::log(best_mag + 1e-300);
        const double hi = std::log(std::abs(a[best + 1]) + 1e-300);
        const double denom = lo - 2.0 * mid + hi;
        if (denom < 0.0) offset = 0.5 * (lo - hi) / denom;
    }
    const double freq =
        (static_cast<double>(best) + offset) / (static_cast<double>(n_fft) * mean_dt);
    return 1.0 / freq;
}

} // namespace

double estimate_period(const TimeSeries& series, PeriodMethod method) {
    series.validate();
    if (series.size() < 4) {
        throw std::domain_error("time series too short for period estimation");
    }
    const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
    if (!(*hi > *lo)) {
        throw std::domain_error("no oscillation detected: series is constant");
    }
    switch (method) {
        case PeriodMethod::peak_spacing:
            return period_from_peaks(series);
        case PeriodMethod::fourier:
            return period_from_fourier(series);
    }
    throw std::domain_error("unknown period method");
}

double FitResult::predict(double t) const {
    return u * std::log(w * t) + z;
}

FitResult fit_log_model(const TimeSeries& series, FitMode mode) {
    series.validate();
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.times[i] > 0.0) {
            x.push_back(std::log(series.times[i]));
            y.push_back(series.values[i]);
        }
    }
    const std::size_t n = x.size();
    if (n < 10) {
        throw std::domain_error("log fit needs at least 10 samples with t > 0");
    }

    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (!(sxx > 0.0)) {
        throw std::domain_error("log fit regressor has zero variance");
    }

    // value = u*ln t + c, reported canonically as u*ln(w*t) with w = exp(c/u)
    const double u = sxy / sxx;
    const double c = ybar - u * xbar;

    FitResult fit;
    fit.mode = mode;
    fit.u = u;
    fit.z = 0.0;
    if (std::abs(u) < 1e-8) {
        fit.w = 1.0;
        fit.degenerate = true;
    } else {
        fit.w = std::exp(c / u);
    }
    return fit;
}

double adjusted_r_squared(const TimeSeries& series, const FitResult& fit) {
    series.validate();
    constexpr int p = 2;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    double ybar = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.times[i] > 0.0) {
            ybar += series.values[i];
            ++n;
        }
    }
    if (n <= p + 1) {
        throw std::domain_error("adjusted R^2 needs more samples than parameters");
    }
    ybar /= static_cast<double>(n);
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.times[i] <= 0.0) continue;
        const double resid = series.values[i] - fit.predict(series.times[i]);
        ss_res += resid * resid;
        ss_tot += (series.values[i] - ybar) * (series.values[i] - ybar);
    }
    if (!(ss_tot > 0.0)) {
        throw std::domain_error("adjusted R^2 undefined for zero total variance");
    }
    const double r2 = 1.0 - ss_res / ss_tot;
    const auto nn = static_cast<double>(n);
    return 1.0 - (1.0 - r2) * (nn - 1.0) / (nn - p - 1.0);
}

} // namespace gquench
