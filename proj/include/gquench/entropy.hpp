#pragma once

#include "gquench/dynamics.hpp"

namespace gquench {

/// The two distinct symplectic eigenvalues of a 4x4 covariance matrix,
/// ordered e1 >= e2. Both equal 1/2 exactly for pure Gaussian states.
struct SymplecticSpectrum {
    double e1 = 0.0;
    double e2 = 0.0;
};

SymplecticSpectrum symplectic_spectrum(const Mat4& cov);
SymplecticSpectrum symplectic_spectrum(const GaussianState& state);

/// 2x2 single-oscillator covariance [[<xx>, <xp>], [<xp>, <pp>]].
struct ReducedCovariance {
    double c11 = 0.0;
    double c12 = 0.0;
    double c22 = 0.0;

    /// The (single) symplectic eigenvalue sqrt(c11*c22 - c12^2).
    double symplectic_eigenvalue() const;

    void validate() const;
};

/// Partial trace down to oscillator `index` (1 or 2): picks the
/// corresponding rows and columns out of the full covariance.
ReducedCovariance reduce_to_oscillator(const GaussianState& state, int index);

/// Von Neumann entropy (nats) of the Gaussian state with reduced covariance
/// d: S = (d + 1/2) ln(d + 1/2) - (d - 1/2) ln(d - 1/2), the second term
/// taken as its limit 0 at d = 1/2. Values of d below 1/2 by more than 1e-9
/// signal upstream numerical corruption and raise NumericError.
double entanglement_entropy(const ReducedCovariance& reduced);

/// max_tau |e_tau - 1/2|; zero for pure states.
double purity_defect(const GaussianState& state);
double purity_defect(const Mat4& cov);

/// Wigner quasiprobability density
/// W(v) = exp(-(v-mean)^T C^{-1} (v-mean) / 2) / (4 pi^2 sqrt(det C)).
double wigner_density(const GaussianState& state, const Vec4& point);

} // namespace gquench
