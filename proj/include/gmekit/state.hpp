#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "gmekit/partition.hpp"

namespace gmekit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Largest total Hilbert-space dimension accepted anywhere in the library.
inline constexpr std::size_t kMaxTotalDim = 4096;

/// Tolerance for unit norm, unit trace and hermiticity of states.
inline constexpr double kStateTol = 1e-10;

/// Eigenvalues in [-kEigenClamp, 0) are treated as 0; anything lower is an error.
inline constexpr double kEigenClamp = 1e-10;

/// Labeled tensor factors with local dimensions. Subsystem 0 is the
/// slowest-varying index of the flat amplitude vector.
class SystemShape {
 public:
  SystemShape() = default;
  SystemShape(std::vector<std::string> labels, std::vector<int> dims);

  /// n qubits labeled A, B, C, ...
  static SystemShape qubits(std::size_t n);
  /// n qudits of dimension d labeled A, B, C, ...
  static SystemShape uniform(std::size_t n, int d);

  std::size_t size() const noexcept { return dims_.size(); }
  int dim(std::size_t i) const { return dims_.at(i); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::size_t total_dim() const noexcept { return total_; }

  /// Product of local dimensions over `subset`.
  std::size_t dim_of(const std::vector<int>& subset) const;

  /// Shape restricted to `subset` (ascending order).
  SystemShape restrict_to(const std::vector<int>& subset) const;

  /// One subsystem per block of `p`, labels concatenated, dims multiplied.
  SystemShape grouped(const Partition& p) const;

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> dims_;
  std::size_t total_ = 1;
};

/// Normalized state vector over a SystemShape.
class PureState {
 public:
  /// Throws StateInvariantError when |amps| is not 1 within kStateTol and
  /// InvalidArgument on a length mismatch.
  PureState(SystemShape shape, Vector amps);

  /// Rescales `amps` to unit norm first; throws on a zero vector.
  static PureState normalized(SystemShape shape, Vector amps);

  const SystemShape& shape() const noexcept { return shape_; }
  const Vector& amplitudes() const noexcept { return amps_; }
  std::size_t parties() const noexcept { return shape_.size(); }

 private:
  SystemShape shape_;
  Vector amps_;
};

/// Positive unit-trace Hermitian matrix over a SystemShape.
class DensityOperator {
 public:
  /// Validates hermiticity, unit trace and eigenvalues >= -kEigenClamp.
  DensityOperator(SystemShape shape, Matrix rho);

  static DensityOperator from_pure(const PureState& psi);
  /// I / D over `shape`.
  static DensityOperator maximally_mixed(SystemShape shape);

  const SystemShape& shape() const noexcept { return shape_; }
  const Matrix& matrix() const noexcept { return rho_; }
  std::size_t parties() const noexcept { return shape_.size(); }

 private:
  struct Unchecked {};
  DensityOperator(SystemShape shape, Matrix rho, Unchecked) : shape_(std::move(shape)), rho_(std::move(rho)) {}
  friend DensityOperator make_density_unchecked(SystemShape, Matrix);

  SystemShape shape_;
  Matrix rho_;
};

/// Either kind of state, as read from a state document.
using AnyState = std::variant<PureState, DensityOperator>;

const SystemShape& shape_of(const AnyState& s);

/// Pure-state decomposition {p_i, |psi_i>} over a common shape.
struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> members;

  std::size_t size() const noexcept { return members.size(); }
  /// sum_i p_i |psi_i><psi_i|
  Matrix density() const;
};

/// Split of the subsystems into an ordered subset and its complement.
///
/// A flat index f over the full shape corresponds to a pair (a, b) where a
/// runs over the subset's digits and b over the complement's, each with
/// subsystem 0 slowest. compose(a, b) and the split tables are precomputed so
/// reshaping a state into a d_subset x d_rest matrix is a single gather.
class IndexSplit {
 public:
  IndexSplit(const SystemShape& shape, std::vector<int> subset);

  std::size_t inner_dim() const noexcept { return dim_a_; }
  std::size_t outer_dim() const noexcept { return dim_b_; }
  const std::vector<int>& subset() const noexcept { return subset_; }
  std::size_t compose(std::size_t a, std::size_t b) const noexcept { return table_[a * dim_b_ + b]; }

  /// psi reshaped to a d_subset x d_rest matrix.
  template <class Derived>
  void reshape(const Eigen::MatrixBase<Derived>& psi, Matrix& out) const {
    out.resize(static_cast<Eigen::Index>(dim_a_), static_cast<Eigen::Index>(dim_b_));
    for (std::size_t a = 0; a < dim_a_; ++a)
      for (std::size_t b = 0; b < dim_b_; ++b)
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = psi(static_cast<Eigen::Index>(table_[a * dim_b_ + b]));
  }

 private:
  std::vector<int> subset_;
  std::size_t dim_a_ = 1, dim_b_ = 1;
  std::vector<std::size_t> table_;
};

/// Reduced state on `keep` (any order; result uses ascending order).
/// Throws InvalidArgument on an empty keep set or bad index.
DensityOperator partial_trace(const PureState& psi, const std::vector<int>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

/// Transpose on the tensor factors in `subset`. The result is Hermitian with
/// unit trace but need not be positive.
Matrix partial_transpose(const Matrix& rho, const SystemShape& shape, const std::vector<int>& subset);
Matrix partial_transpose(const DensityOperator& rho, const std::vector<int>& subset);

/// Reorders tensor factors: subsystem perm[k] of the input becomes factor k.
PureState permute(const PureState& psi, const std::vector<int>& perm);
DensityOperator permute(const DensityOperator& rho, const std::vector<int>& perm);

/// k-partite view over the blocks of `p`. The partition must cover every
/// subsystem for a pure state; the result is a pure reindexing.
PureState regroup(const PureState& psi, const Partition& p);
/// Discarded subsystems are traced out before grouping.
DensityOperator regroup(const DensityOperator& rho, const Partition& p);
/// Marginal of a pure state on the blocks of `p` (any support).
DensityOperator regroup_marginal(const PureState& psi, const Partition& p);
/// Inverse of regroup for a covering partition: restores `original`'s factors.
PureState ungroup(const PureState& grouped, const SystemShape& original, const Partition& p);

/// |a> (x) |b>, labels and dims concatenated.
PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Applies `op` to subsystem `party` (op must be dim x dim).
Vector apply_local(const Vector& psi, const SystemShape& shape, int party, const Matrix& op);
PureState apply_local(const PureState& psi, int party, const Matrix& op);

/// Random generator used for all seeded sampling.
using Rng = std::mt19937_64;

/// Haar-random unitary of size d (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(int d, Rng& rng);
/// Normalized complex Gaussian vector over `shape`.
PureState random_pure(const SystemShape& shape, std::uint64_t seed);
PureState random_pure(const SystemShape& shape, Rng& rng);
/// Haar pure state on shape (x) C^rank with the ancilla traced out.
DensityOperator random_density(const SystemShape& shape, int rank, std::uint64_t seed);
DensityOperator random_density(const SystemShape& shape, int rank, Rng& rng);

/// Computational basis product state |digits>.
PureState basis_state(const SystemShape& shape, const std::vector<int>& digits);

/// Largest |entry| of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace gmekit
