#include "gmekit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmekit/errors.hpp"

namespace gmekit {

namespace {

void require_hermitian(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw InvalidArgument(std::string(what) + ": matrix is not square");
  if (max_abs_diff(m, m.adjoint()) > kStateTol) throw InvalidArgument(std::string(what) + ": matrix is not Hermitian");
}

void require_same_size(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("fidelity: dimension mismatch");
}

}  // namespace

void EntropyParams::validate() const {
  if (!(q > 1.0) || !std::isfinite(q)) throw InvalidArgument("Tsallis q must be > 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("Renyi alpha must lie in (0, 1)");
}

Eigen::VectorXd floor_spectrum(Eigen::VectorXd lambda) {
  if (lambda.size() == 0) return lambda;
  const double floor = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) <= floor) lambda(i) = 0.0;
  return lambda;
}

Eigen::VectorXd clamped_spectrum(const Matrix& m) {
  require_hermitian(m, "spectrum");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) < -kEigenClamp) throw StateInvariantError("negative eigenvalue " + std::to_string(lambda(i)));
  return floor_spectrum(lambda);
}

double von_neumann_spectrum(const Eigen::VectorXd& lambda, LogBase base) {
  double s = 0.0;
  for (double l : lambda)
    if (l > 0.0) s -= l * std::log(l);
  if (base == LogBase::Two) s /= std::log(2.0);
  return std::max(s, 0.0);
}

double tsallis_spectrum(const Eigen::VectorXd& lambda, double q) {
  double tr = 0.0;
  for (double l : lambda)
    if (l > 0.0) tr += std::pow(l, q);
  return std::max((tr - 1.0) / (1.0 - q), 0.0);
}

double renyi_spectrum(const Eigen::VectorXd& lambda, double alpha) {
  double tr = 0.0;
  for (double l : lambda)
    if (l > 0.0) tr += std::pow(l, alpha);
  return std::max(std::log(tr) / (1.0 - alpha), 0.0);
}

double von_neumann(const Matrix& rho, LogBase base) { return von_neumann_spectrum(clamped_spectrum(rho), base); }

double tsallis(const Matrix& rho, double q) {
  EntropyParams{q, 0.5}.validate();
  return tsallis_spectrum(clamped_spectrum(rho), q);
}

double renyi(const Matrix& rho, double alpha) {
  EntropyParams{2.0, alpha}.validate();
  return renyi_spectrum(clamped_spectrum(rho), alpha);
}

double purity(const Matrix& rho) {
  require_hermitian(rho, "purity");
  return rho.squaredNorm();
}

double trace_norm(const Matrix& m) {
  require_hermitian(m, "trace_norm");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Matrix matrix_sqrt(const Matrix& rho) {
  require_hermitian(rho, "matrix_sqrt");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Eigen::VectorXd lambda = es.eigenvalues();
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    if (lambda(i) < -kEigenClamp) throw StateInvariantError("matrix_sqrt of a matrix with eigenvalue " + std::to_string(lambda(i)));
  lambda = floor_spectrum(lambda).cwiseSqrt();
  return es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity_uhlmann(const Matrix& rho, const Matrix& sigma) {
  require_same_size(rho, sigma);
  // ||sqrt(rho) sqrt(sigma)||_1 through singular values, which stay well
  // conditioned at rank deficiency
  const Matrix product = matrix_sqrt(rho) * matrix_sqrt(sigma);
  const double tr = Eigen::JacobiSVD<Matrix>(product).singularValues().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double fidelity_sqrt(const Matrix& rho, const Matrix& sigma) { return std::sqrt(fidelity_uhlmann(rho, sigma)); }

double fidelity_affinity(const Matrix& rho, const Matrix& sigma) {
  require_same_size(rho, sigma);
  const double a = (matrix_sqrt(rho) * matrix_sqrt(sigma)).trace().real();
  return std::clamp(a * a, 0.0, 1.0);
}

}  // namespace gmekit
