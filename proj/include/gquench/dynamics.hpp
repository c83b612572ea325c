#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gquench/errors.hpp"

namespace gquench {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Potential coefficients of the two-oscillator Hamiltonian
/// V = kappa0*(x1^2 + x2^2)/2 + kappa1*(x1 - x2)^2/2.
struct StiffnessParams {
    double kappa0 = 0.0;  ///< on-site stiffness (frequency^2 units)
    double kappa1 = 0.0;  ///< coupling stiffness (frequency^2 units)

    /// Symmetric normal-mode frequency sqrt(kappa0).
    double omega_p() const { return std::sqrt(kappa0); }
    /// Antisymmetric normal-mode frequency sqrt(kappa0 + 2*kappa1).
    double omega_m() const { return std::sqrt(kappa0 + 2.0 * kappa1); }

    /// Throws std::domain_error unless both normal-mode frequencies are
    /// real and strictly positive.
    void validate() const;
};

/// Inverse of the normal-mode map: kappa0 = omega_p^2,
/// kappa1 = (omega_m^2 - omega_p^2)/2.
StiffnessParams stiffness_from_frequencies(double omega_p, double omega_m);

/// Instantaneous frequency quench: the system starts in the ground state of
/// the (omega_p0, omega_m0) Hamiltonian and evolves under (omega_p1, omega_m1)
/// for t > 0.
struct QuenchSchedule {
    double omega_p0 = 0.0;
    double omega_m0 = 0.0;
    double omega_p1 = 0.0;
    double omega_m1 = 0.0;

    StiffnessParams pre() const { return stiffness_from_frequencies(omega_p0, omega_m0); }
    StiffnessParams post() const { return stiffness_from_frequencies(omega_p1, omega_m1); }

    void validate() const;
};

/// Gaussian state of the pair, quadrature ordering (x1, x2, p1, p2).
/// cov holds the symmetric connected second moments.
struct GaussianState {
    double t = 0.0;
    Vec4 mean = Vec4::Zero();
    Mat4 cov = Mat4::Zero();
};

/// The symplectic form encoding [x_a, p_b] = i*delta_ab.
Mat4 symplectic_form();

/// Generator of the linear Heisenberg flow vdot = A*v.
Mat4 drift_matrix(const StiffnessParams& params);

/// Ground-state covariance of the coupled Hamiltonian at t = 0, zero means.
GaussianState build_initial_covariance(const StiffnessParams& params);

struct MomentRates {
    Vec4 mean_rate;
    Mat4 cov_rate;
};

/// First- and second-moment time derivatives under the given stiffness:
/// mean_rate = A*mean, cov_rate = A*cov + cov*A^T.
MomentRates moment_rhs(const GaussianState& state, const StiffnessParams& params);

/// One classical fourth-order Runge-Kutta step of length dt applied jointly
/// to mean and covariance. The returned covariance is re-symmetrized.
GaussianState step_rk4(const GaussianState& state, const StiffnessParams& params, double dt);

/// Evolves the ground state of schedule.pre() through the quench with a fixed
/// step dt up to t_max, recording every record_every-th step (first and last
/// states always included).
///
/// All steps at t > 0 use the post-quench stiffness. Setting
/// first_step_prequench makes the first increment run at the pre-quench
/// stiffness instead, which reproduces the convention of updating the
/// frequencies only after the first step has completed.
std::vector<GaussianState> evolve(const QuenchSchedule& schedule, double dt, double t_max,
                                  int record_every, bool first_step_prequench = false);

} // namespace gquench
