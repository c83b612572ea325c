#include "gquench/analytic.hpp"

#include <cmath>

namespace gquench {

namespace {

/// zeta = theta1 / (theta2 + sqrt(theta2^2 - theta1^2)), evaluated through
/// the factored discriminant to avoid cancellation when theta2 ~ theta1.
double schmidt_ratio(double theta1, double theta2) {
    const double disc = (theta2 - theta1) * (theta2 + theta1);
    if (disc < 0.0 && disc > -1e-12 * theta2 * theta2) {
        return theta1 / theta2;  // round-off past the degenerate point
    }
    if (disc < 0.0) {
        throw NumericError("kernel coefficients violate theta2 >= theta1");
    }
    return theta1 / (theta2 + std::sqrt(disc));
}

} // namespace

double geometric_entropy(double ratio) {
    if (!(ratio >= 0.0) || ratio >= 1.0) {
        throw std::domain_error("geometric-ladder ratio must lie in [0, 1)");
    }
    if (ratio < 1e-300) return 0.0;
    return ratio / (1.0 - ratio) * std::log(1.0 / ratio) + std::log(1.0 / (1.0 - ratio));
}

StaticEntropyResult static_entropy(double omega_p, double omega_m) {
    if (!(omega_p > 0.0) || !(omega_m > 0.0)) {
        throw std::domain_error("eigenfrequencies must be strictly positive");
    }
    StaticEntropyResult res;
    const double sum = omega_m + omega_p;
    const double diff = omega_m - omega_p;
    res.theta10 = 0.25 * diff * diff / sum;
    res.theta20 = 0.25 * sum + omega_m * omega_p / sum;
    res.zeta = schmidt_ratio(res.theta10, res.theta20);
    res.entropy = geometric_entropy(res.zeta);
    return res;
}

QuenchCoefficients quench_coefficients(const QuenchSchedule& schedule) {
    schedule.validate();
    const auto mode = [](double omega0, double omega1) {
        const double w1sq = omega1 * omega1;
        const double w0sq = omega0 * omega0;
        return ModeCoefficients{(w1sq + w0sq) / (2.0 * w1sq), (w1sq - w0sq) / (2.0 * w1sq)};
    };
    return {mode(schedule.omega_p0, schedule.omega_p1),
            mode(schedule.omega_m0, schedule.omega_m1)};
}

GammaValue quench_gamma(const ModeCoefficients& coeffs, double omega1, double t) {
    if (!(coeffs.plus > std::abs(coeffs.minus))) {
        throw std::domain_error("degenerate quench: the scale factor would vanish");
    }
    const double phase = 2.0 * omega1 * t;
    const double gamma = std::sqrt(coeffs.minus * std::cos(phase) + coeffs.plus);
    const double gamma_dot = -omega1 * coeffs.minus * std::sin(phase) / gamma;
    return {gamma, gamma_dot};
}

std::vector<ErmakovSample> ermakov_integrate(const std::function<double(double)>& omega_of_t,
                                             double omega0, double dt, double t_max) {
    if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
    if (!(omega0 > 0.0)) throw std::domain_error("omega0 must be positive");
    const double omega0_sq = omega0 * omega0;

    const auto accel = [&](double t, double gamma) {
        const double omega = omega_of_t(t);
        return -omega * omega * gamma + omega0_sq / (gamma * gamma * gamma);
    };

    const auto n_steps = static_cast<long long>(std::llround(t_max / dt));
    std::vector<ErmakovSample> out;
    out.reserve(static_cast<std::size_t>(n_steps) + 1);

    double g = 1.0;
    double v = 0.0;
    out.push_back({0.0, g, v});
    for (long long step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        const double k1g = v, k1v = accel(t, g);
        const double k2g = v + 0.5 * dt * k1v, k2v = accel(t + 0.5 * dt, g + 0.5 * dt * k1g);
        const double k3g = v + 0.5 * dt * k2v, k3v = accel(t + 0.5 * dt, g + 0.5 * dt * k2g);
        const double k4g = v + dt * k3v, k4v = accel(t + dt, g + dt * k3g);
        g += (dt / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        v += (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!(g > 0.0) || !std::isfinite(g) || !std::isfinite(v)) {
            throw NumericError("scale factor hit zero during integration at t = " +
                               std::to_string(t + dt));
        }
        out.push_back({static_cast<double>(step + 1) * dt, g, v});
    }
    return out;
}

AnalyticState analytic_state(const QuenchSchedule& schedule, double t) {
    if (!(t >= 0.0)) throw std::domain_error("time must be non-negative");
    const QuenchCoefficients coeffs = quench_coefficients(schedule);
    const GammaValue g1 = quench_gamma(coeffs.p, schedule.omega_p1, t);
    const GammaValue g2 = quench_gamma(coeffs.m, schedule.omega_m1, t);

    AnalyticState st;
    st.t = t;
    st.gamma1 = g1.gamma;
    st.gamma2 = g2.gamma;
    st.gamma1_dot = g1.gamma_dot;
    st.gamma2_dot = g2.gamma_dot;
    st.delta1 = g1.gamma_dot / g1.gamma;
    st.delta2 = g2.gamma_dot / g2.gamma;

    const double fp = schedule.omega_p0 / (g1.gamma * g1.gamma);
    const double fm = schedule.omega_m0 / (g2.gamma * g2.gamma);
    st.freq_plus = fp + fm;
    st.freq_minus = fp - fm;

    const double dd = st.delta1 - st.delta2;
    st.theta1 = (st.freq_minus * st.freq_minus + dd * dd) / (4.0 * st.freq_plus);
    st.theta2 = 0.5 * st.freq_plus - (st.freq_minus * st.freq_minus - dd * dd) / (4.0 * st.freq_plus);
    st.pi_value = schmidt_ratio(st.theta1, st.theta2);
    return st;
}

double analytic_entropy(const QuenchSchedule& schedule, double t) {
    return geometric_entropy(analytic_state(schedule, t).pi_value);
}

TimeSeries analytic_entropy_series(const QuenchSchedule& schedule, double dt, double t_max) {
    if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
    const auto n = static_cast<long long>(std::llround(t_max / dt));
    TimeSeries series;
    for (long long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        series.push(t, analytic_entropy(schedule, t));
    }
    return series;
}

} // namespace gquench
