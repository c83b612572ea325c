#pragma once

#include <cstddef>
#include <vector>

#include "gquench/errors.hpp"

namespace gquench {

/// Sampled trajectory with strictly increasing times.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const { return times.size(); }
    void push(double t, double v) {
        times.push_back(t);
        values.push_back(v);
    }

    /// Throws std::domain_error on non-increasing times or non-finite values.
    void validate() const;
};

/// Samples with t >= t_min (used to trim early transients before fitting).
TimeSeries tail_from(const TimeSeries& series, double t_min);

enum class PeriodMethod {
    peak_spacing,  ///< mean spacing of successive maxima after smoothing
    fourier,       ///< inverse of the peak frequency of the mean-removed DFT
};

/// Dominant oscillation period of the series. The peak-spacing estimator
/// smooths with a centered moving average whose window spans 1% of the time
/// range before locating maxima; the Fourier estimator is limited by the
/// frequency resolution of the record. Throws std::domain_error when no
/// oscillation is present (fewer than two maxima / empty spectrum).
double estimate_period(const TimeSeries& series, PeriodMethod method = PeriodMethod::peak_spacing);

enum class FitMode {
    fix_z_zero,        ///< canonical report u*ln(w*t), z pinned to 0
    linear_intercept,  ///< same least squares via value = u*ln t + c
};

/// Parameters of the model value(t) = u*ln(w*t) + z. Only u and the
/// combination u*ln(w) + z are identifiable; both fit modes report the
/// canonical z = 0 form.
struct FitResult {
    double u = 0.0;
    double w = 1.0;
    double z = 0.0;
    double r2_adj = 0.0;  ///< filled by adjusted_r_squared
    FitMode mode = FitMode::fix_z_zero;
    bool degenerate = false;  ///< |u| < 1e-8: w is unidentifiable, reported as 1

    double predict(double t) const;
};

/// Least-squares fit of value = u*ln t + c over the samples with t > 0
/// (a leading t = 0 sample is skipped). Requires >= 10 usable samples.
FitResult fit_log_model(const TimeSeries& series, FitMode mode = FitMode::fix_z_zero);

/// Adjusted R^2 of the fit over the series samples with t > 0, with p = 2
/// free parameters. Throws std::domain_error on zero total variance or
/// too few samples.
double adjusted_r_squared(const TimeSeries& series, const FitResult& fit);

} // namespace gquench
