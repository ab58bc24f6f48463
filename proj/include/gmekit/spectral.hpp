#pragma once

#include <Eigen/Dense>

#include "gmekit/state.hpp"

namespace gmekit {

enum class LogBase { Two, E };

/// Parameters of the entropy-based measures. q > 1 (Tsallis), alpha in
/// (0, 1) (Renyi, always natural log), log_base for von Neumann.
struct EntropyParams {
  double q = 2.0;
  double alpha = 0.5;
  LogBase log_base = LogBase::Two;

  /// Throws InvalidArgument when q or alpha is out of range.
  void validate() const;
};

/// Eigenvalues of a Hermitian matrix with values in [-kEigenClamp, 0) set to
/// zero. Throws InvalidArgument if `m` is not Hermitian and
/// StateInvariantError if an eigenvalue falls below -kEigenClamp.
Eigen::VectorXd clamped_spectrum(const Matrix& m);

/// Eigenvalues at or below the solver's noise level (64 eps max(1, |l|max))
/// set to zero. Fractional powers would otherwise turn 1e-17 into 1e-8.
Eigen::VectorXd floor_spectrum(Eigen::VectorXd lambda);

// Spectrum-level forms; the spectrum must already be clamped.
double von_neumann_spectrum(const Eigen::VectorXd& lambda, LogBase base = LogBase::Two);
double tsallis_spectrum(const Eigen::VectorXd& lambda, double q);
double renyi_spectrum(const Eigen::VectorXd& lambda, double alpha);

/// -sum l log l, 0 log 0 = 0.
double von_neumann(const Matrix& rho, LogBase base = LogBase::Two);
/// (1 - q)^-1 [tr rho^q - 1]
double tsallis(const Matrix& rho, double q);
/// (1 - alpha)^-1 ln tr rho^alpha
double renyi(const Matrix& rho, double alpha);

/// tr rho^2 (computed from entries, no eigendecomposition).
double purity(const Matrix& rho);
/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const Matrix& m);
/// V sqrt(clamped Lambda) V^dagger of a positive semidefinite matrix.
Matrix matrix_sqrt(const Matrix& rho);

/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clipped to [0, 1].
double fidelity_uhlmann(const Matrix& rho, const Matrix& sigma);
/// Square root of the Uhlmann fidelity.
double fidelity_sqrt(const Matrix& rho, const Matrix& sigma);
/// [tr(sqrt(rho) sqrt(sigma))]^2, clipped to [0, 1].
double fidelity_affinity(const Matrix& rho, const Matrix& sigma);

inline double von_neumann(const DensityOperator& rho, LogBase base = LogBase::Two) { return von_neumann(rho.matrix(), base); }
inline double tsallis(const DensityOperator& rho, double q) { return tsallis(rho.matrix(), q); }
inline double renyi(const DensityOperator& rho, double alpha) { return renyi(rho.matrix(), alpha); }
inline double purity(const DensityOperator& rho) { return purity(rho.matrix()); }

}  // namespace gmekit
