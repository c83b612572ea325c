#pragma once

#include <functional>
#include <vector>

#include "gquench/dynamics.hpp"
#include "gquench/fitting.hpp"

namespace gquench {

/// Entropy (nats) of the geometric eigenvalue ladder p_k = r^k (1 - r):
/// S(r) = r/(1-r) ln(1/r) + ln(1/(1-r)), with the r -> 0 limit 0.
/// Requires r in [0, 1).
double geometric_entropy(double ratio);

/// Ground-state entanglement entropy of the coupled pair in closed form.
struct StaticEntropyResult {
    double theta10 = 0.0;  ///< kernel cross coefficient (frequency units)
    double theta20 = 0.0;  ///< kernel diagonal coefficient (frequency units)
    double zeta = 0.0;     ///< geometric ratio of the reduced spectrum, in [0, 1)
    double entropy = 0.0;  ///< nats
};

StaticEntropyResult static_entropy(double omega_p, double omega_m);

/// Dimensionless scale-factor solution coefficients for one quenched mode:
/// plus/minus = (omega1^2 +- omega0^2) / (2 omega1^2). plus + minus = 1 and
/// plus - minus = omega0^2/omega1^2 hold identically.
struct ModeCoefficients {
    double plus = 1.0;
    double minus = 0.0;
};

struct QuenchCoefficients {
    ModeCoefficients p;  ///< symmetric mode, omega_p0 -> omega_p1
    ModeCoefficients m;  ///< antisymmetric mode, omega_m0 -> omega_m1
};

QuenchCoefficients quench_coefficients(const QuenchSchedule& schedule);

struct GammaValue {
    double gamma = 1.0;
    double gamma_dot = 0.0;
};

/// Closed-form scale factor for an instantaneous quench to omega1:
/// gamma(t) = sqrt(minus*cos(2 omega1 t) + plus), with gamma(0) = 1 and
/// gamma_dot(0) = 0. Throws std::domain_error when plus <= |minus| (gamma
/// would reach zero).
GammaValue quench_gamma(const ModeCoefficients& coeffs, double omega1, double t);

struct ErmakovSample {
    double t = 0.0;
    double gamma = 1.0;
    double gamma_dot = 0.0;
};

/// Fixed-step RK4 integration of the scale-factor equation
/// gamma_ddot = -omega(t)^2 gamma + omega0^2 / gamma^3 from gamma(0) = 1,
/// gamma_dot(0) = 0. Throws NumericError if gamma is driven to zero or below.
std::vector<ErmakovSample> ermakov_integrate(const std::function<double(double)>& omega_of_t,
                                             double omega0, double dt, double t_max);

/// Everything the closed-form entropy needs at one instant.
struct AnalyticState {
    double t = 0.0;
    double gamma1 = 1.0;  ///< symmetric-mode scale factor
    double gamma2 = 1.0;  ///< antisymmetric-mode scale factor
    double gamma1_dot = 0.0;
    double gamma2_dot = 0.0;
    double delta1 = 0.0;  ///< gamma1_dot / gamma1
    double delta2 = 0.0;  ///< gamma2_dot / gamma2
    double freq_plus = 0.0;   ///< omega_p0/gamma1^2 + omega_m0/gamma2^2
    double freq_minus = 0.0;  ///< omega_p0/gamma1^2 - omega_m0/gamma2^2
    double theta1 = 0.0;      ///< time-dependent kernel cross coefficient
    double theta2 = 0.0;      ///< time-dependent kernel diagonal coefficient
    double pi_value = 0.0;    ///< geometric ratio of the reduced spectrum
};

AnalyticState analytic_state(const QuenchSchedule& schedule, double t);

/// Exact entanglement entropy at a single instant.
double analytic_entropy(const QuenchSchedule& schedule, double t);

/// Exact entropy sampled at t = 0, dt, 2 dt, ..., t_max.
TimeSeries analytic_entropy_series(const QuenchSchedule& schedule, double dt, double t_max);

} // namespace gquench
