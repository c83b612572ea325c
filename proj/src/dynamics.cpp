#include "gquench/dynamics.hpp"

#include <cmath>
#include <string>

namespace gquench {

void StiffnessParams::validate() const {
    if (!(std::isfinite(kappa0) && std::isfinite(kappa1))) {
        throw std::domain_error("stiffness parameters must be finite");
    }
    if (kappa0 <= 0.0) {
        throw std::domain_error("kappa0 must be positive (got " + std::to_string(kappa0) + ")");
    }
    if (kappa0 + 2.0 * kappa1 <= 0.0) {
        throw std::domain_error("kappa0 + 2*kappa1 must be positive; the antisymmetric mode "
                                "frequency would be zero or imaginary");
    }
}

StiffnessParams stiffness_from_frequencies(double omega_p, double omega_m) {
    if (!(omega_p > 0.0) || !(omega_m > 0.0)) {
        throw std::domain_error("eigenfrequencies must be strictly positive");
    }
    StiffnessParams params{omega_p * omega_p, 0.5 * (omega_m * omega_m - omega_p * omega_p)};
    params.validate();
    return params;
}

void QuenchSchedule::validate() const {
    pre().validate();
    post().validate();
}

Mat4 symplectic_form() {
    Mat4 lambda = Mat4::Zero();
    lambda(0, 2) = lambda(1, 3) = 1.0;
    lambda(2, 0) = lambda(3, 1) = -1.0;
    return lambda;
}

Mat4 drift_matrix(const StiffnessParams& params) {
    params.validate();
    Mat4 a = Mat4::Zero();
    // xdot = p
    a(0, 2) = a(1, 3) = 1.0;
    // pdot_i = -(kappa0 + kappa1) x_i + kappa1 x_j
    a(2, 0) = a(3, 1) = -(params.kappa0 + params.kappa1);
    a(2, 1) = a(3, 0) = params.kappa1;
    return a;
}

GaussianState build_initial_covariance(const StiffnessParams& params) {
    params.validate();
    const double wp = params.omega_p();
    const double wm = params.omega_m();
    const double chi_p = 0.25 * (1.0 / wp + 1.0 / wm);
    const double chi_m = 0.25 * (1.0 / wp - 1.0 / wm);
    const double xi_p = 0.25 * (wp + wm);
    const double xi_m = 0.25 * (wp - wm);

    GaussianState state;
    state.t = 0.0;
    state.mean.setZero();
    state.cov.setZero();
    state.cov(0, 0) = state.cov(1, 1) = chi_p;
    state.cov(0, 1) = state.cov(1, 0) = chi_m;
    state.cov(2, 2) = state.cov(3, 3) = xi_p;
    state.cov(2, 3) = state.cov(3, 2) = xi_m;
    return state;
}

MomentRates moment_rhs(const GaussianState& state, const StiffnessParams& params) {
    const Mat4 a = drift_matrix(params);
    MomentRates rates;
    rates.mean_rate = a * state.mean;
    rates.cov_rate = a * state.cov + state.cov * a.transpose();
    return rates;
}

namespace {

struct Stage {
    Vec4 mean;
    Mat4 cov;
};

Stage rates_at(const Vec4& mean, const Mat4& cov, const Mat4& a) {
    return {a * mean, a * cov + cov * a.transpose()};
}

} // namespace

GaussianState step_rk4(const GaussianState& state, const StiffnessParams& params, double dt) {
    if (!(dt > 0.0)) {
        throw std::domain_error("step size must be positive");
    }
    const Mat4 a = drift_matrix(params);

    const Stage k1 = rates_at(state.mean, state.cov, a);
    const Stage k2 = rates_at(state.mean + 0.5 * dt * k1.mean, state.cov + 0.5 * dt * k1.cov, a);
    const Stage k3 = rates_at(state.mean + 0.5 * dt * k2.mean, state.cov + 0.5 * dt * k2.cov, a);
    const Stage k4 = rates_at(state.mean + dt * k3.mean, state.cov + dt * k3.cov, a);

    GaussianState next;
    next.t = state.t + dt;
    next.mean = state.mean + (dt / 6.0) * (k1.mean + 2.0 * k2.mean + 2.0 * k3.mean + k4.mean);
    next.cov = state.cov + (dt / 6.0) * (k1.cov + 2.0 * k2.cov + 2.0 * k3.cov + k4.cov);
    next.cov = 0.5 * (next.cov + next.cov.transpose()).eval();
    return next;
}

std::vector<GaussianState> evolve(const QuenchSchedule& schedule, double dt, double t_max,
                                  int record_every, bool first_step_prequench) {
    schedule.validate();
    if (!(dt > 0.0)) throw std::domain_error("dt must be positive");
    if (!(t_max > dt)) throw std::domain_error("t_max must exceed dt");
    if (record_every < 1) throw std::domain_error("record_every must be >= 1");

    const StiffnessParams pre = schedule.pre();
    const StiffnessParams post = schedule.post();
    const auto n_steps = static_cast<long long>(std::llround(t_max / dt));

    GaussianState state = build_initial_covariance(pre);
    std::vector<GaussianState> recorded;
    recorded.reserve(static_cast<std::size_t>(n_steps / record_every) + 2);
    recorded.push_back(state);

    for (long long step = 1; step <= n_steps; ++step) {
        const StiffnessParams& params = (step == 1 && first_step_prequench) ? pre : post;
        state = step_rk4(state, params, dt);
        state.t = static_cast<double>(step) * dt;  // avoid accumulated-sum drift
        if (!state.cov.allFinite() || !state.mean.allFinite()) {
            throw PropagationError("non-finite moments encountered",
                                   static_cast<std::size_t>(step));
        }
        if (step % record_every == 0 || step == n_steps) {
            recorded.push_back(state);
        }
    }
    return recorded;
}

} // namespace gquench
