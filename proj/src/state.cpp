#include "gmekit/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gmekit/errors.hpp"

namespace gmekit {

DensityOperator make_density_unchecked(SystemShape shape, Matrix rho) {
  return DensityOperator(std::move(shape), std::move(rho), DensityOperator::Unchecked{});
}

namespace {

void check_indices(const SystemShape& shape, const std::vector<int>& idx, const char* what) {
  std::set<int> seen;
  for (int i : idx) {
    if (i < 0 || static_cast<std::size_t>(i) >= shape.size())
      throw InvalidArgument(std::string(what) + ": subsystem index " + std::to_string(i) + " out of range");
    if (!seen.insert(i).second) throw InvalidArgument(std::string(what) + ": repeated subsystem index");
  }
}

std::vector<int> complement(const SystemShape& shape, const std::vector<int>& subset) {
  std::vector<int> rest;
  for (std::size_t i = 0; i < shape.size(); ++i)
    if (std::find(subset.begin(), subset.end(), static_cast<int>(i)) == subset.end()) rest.push_back(static_cast<int>(i));
  return rest;
}

std::vector<std::size_t> strides(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * static_cast<std::size_t>(dims[k]);
  return s;
}

// For each flat index over `order` (slowest first), the flat index over the
// full shape.
std::vector<std::size_t> gather_table(const SystemShape& shape, const std::vector<int>& order) {
  const auto full = strides(shape.dims());
  std::vector<int> sub_dims;
  for (int i : order) sub_dims.push_back(shape.dim(static_cast<std::size_t>(i)));
  std::size_t n = 1;
  for (int d : sub_dims) n *= static_cast<std::size_t>(d);
  std::vector<std::size_t> out(n);
  std::vector<int> digit(order.size(), 0);
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < order.size(); ++k) idx += static_cast<std::size_t>(digit[k]) * full[static_cast<std::size_t>(order[k])];
    out[f] = idx;
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digit[k] < sub_dims[k]) break;
      digit[k] = 0;
    }
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

SystemShape::SystemShape(std::vector<std::string> labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size())
    throw InvalidShape("shape has " + std::to_string(labels_.size()) + " labels but " + std::to_string(dims_.size()) + " dims");
  if (dims_.empty()) throw InvalidShape("shape has no subsystems");
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InvalidShape("empty subsystem label");
    if (l.find('|') != std::string::npos) throw InvalidShape("subsystem label may not contain '|'");
    if (!seen.insert(l).second) throw InvalidShape("duplicate subsystem label '" + l + "'");
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw InvalidShape("local dimension must be at least 2, got " + std::to_string(d));
    total_ *= static_cast<std::size_t>(d);
    if (total_ > kMaxTotalDim)
      throw SizeLimitError("total dimension exceeds " + std::to_string(kMaxTotalDim));
  }
}

SystemShape SystemShape::qubits(std::size_t n) { return uniform(n, 2); }

SystemShape SystemShape::uniform(std::size_t n, int d) {
  return SystemShape(default_labels(n), std::vector<int>(n, d));
}

std::size_t SystemShape::dim_of(const std::vector<int>& subset) const {
  std::size_t d = 1;
  for (int i : subset) d *= static_cast<std::size_t>(dims_.at(static_cast<std::size_t>(i)));
  return d;
}

SystemShape SystemShape::restrict_to(const std::vector<int>& subset) const {
  check_indices(*this, subset, "restrict_to");
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> l;
  std::vector<int> d;
  for (int i : sorted) {
    l.push_back(labels_[static_cast<std::size_t>(i)]);
    d.push_back(dims_[static_cast<std::size_t>(i)]);
  }
  return SystemShape(std::move(l), std::move(d));
}

SystemShape SystemShape::grouped(const Partition& p) const {
  std::vector<std::string> l;
  std::vector<int> d;
  for (const auto& b : p.blocks()) {
    check_indices(*this, b, "grouped");
    std::string name;
    int dim = 1;
    for (int i : b) {
      name += labels_[static_cast<std::size_t>(i)];
      dim *= dims_[static_cast<std::size_t>(i)];
    }
    l.push_back(std::move(name));
    d.push_back(dim);
  }
  // merged labels like "A"+"BC" vs "AB"+"C" cannot collide inside one partition
  return SystemShape(std::move(l), std::move(d));
}

PureState::PureState(SystemShape shape, Vector amps) : shape_(std::move(shape)), amps_(std::move(amps)) {
  if (static_cast<std::size_t>(amps_.size()) != shape_.total_dim())
    throw InvalidArgument("amplitude vector has length " + std::to_string(amps_.size()) + ", shape needs " +
                          std::to_string(shape_.total_dim()));
  const double n = amps_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kStateTol)
    throw StateInvariantError("pure state is not normalized (norm " + std::to_string(n) + ")");
}

PureState PureState::normalized(SystemShape shape, Vector amps) {
  const double n = amps.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw StateInvariantError("cannot normalize a zero or non-finite vector");
  return PureState(std::move(shape), amps / n);
}

DensityOperator::DensityOperator(SystemShape shape, Matrix rho) : shape_(std::move(shape)), rho_(std::move(rho)) {
  const auto D = static_cast<Eigen::Index>(shape_.total_dim());
  if (rho_.rows() != D || rho_.cols() != D)
    throw InvalidArgument("density matrix is " + std::to_string(rho_.rows()) + "x" + std::to_string(rho_.cols()) +
                          ", shape needs " + std::to_string(D));
  if (!rho_.allFinite()) throw StateInvariantError("density matrix has non-finite entries");
  if (max_abs_diff(rho_, rho_.adjoint()) > kStateTol) throw StateInvariantError("density matrix is not Hermitian");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) throw StateInvariantError("density matrix trace is " + std::to_string(tr));
  const double lo = hermitian_eigenvalues(rho_).minCoeff();
  if (lo < -kEigenClamp) throw StateInvariantError("density matrix has eigenvalue " + std::to_string(lo));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return make_density_unchecked(psi.shape(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(SystemShape shape) {
  const auto D = static_cast<Eigen::Index>(shape.total_dim());
  Matrix m = Matrix::Identity(D, D) / static_cast<double>(D);
  return make_density_unchecked(std::move(shape), std::move(m));
}

const SystemShape& shape_of(const AnyState& s) {
  return std::visit([](const auto& st) -> const SystemShape& { return st.shape(); }, s);
}

Matrix Ensemble::density() const {
  if (members.empty()) return {};
  const auto D = members.front().amplitudes().size();
  Matrix rho = Matrix::Zero(D, D);
  for (std::size_t i = 0; i < members.size(); ++i)
    rho.noalias() += weights[i] * members[i].amplitudes() * members[i].amplitudes().adjoint();
  return rho;
}

IndexSplit::IndexSplit(const SystemShape& shape, std::vector<int> subset) : subset_(std::move(subset)) {
  check_indices(shape, subset_, "IndexSplit");
  auto rest = complement(shape, subset_);
  dim_a_ = shape.dim_of(subset_);
  dim_b_ = shape.dim_of(rest);
  std::vector<int> order = subset_;
  order.insert(order.end(), rest.begin(), rest.end());
  table_ = gather_table(shape, order);
}

DensityOperator partial_trace(const PureState& psi, const std::vector<int>& keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  IndexSplit split(psi.shape(), sorted);
  Matrix m;
  split.reshape(psi.amplitudes(), m);
  Matrix rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(psi.shape().restrict_to(sorted), std::move(rho));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  IndexSplit split(rho.shape(), sorted);
  const auto da = split.inner_dim(), db = split.outer_dim();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  const Matrix& r = rho.matrix();
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Complex acc = 0.0;
      for (std::size_t b = 0; b < db; ++b)
        acc += r(static_cast<Eigen::Index>(split.compose(i, b)), static_cast<Eigen::Index>(split.compose(j, b)));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityOperator(rho.shape().restrict_to(sorted), std::move(out));
}

Matrix partial_transpose(const Matrix& rho, const SystemShape& shape, const std::vector<int>& subset) {
  if (static_cast<std::size_t>(rho.rows()) != shape.total_dim() || rho.rows() != rho.cols())
    throw InvalidArgument("partial_transpose: matrix does not match shape");
  check_indices(shape, subset, "partial_transpose");
  IndexSplit split(shape, subset);
  const auto da = split.inner_dim(), db = split.outer_dim();
  Matrix out(rho.rows(), rho.cols());
  for (std::size_t a1 = 0; a1 < da; ++a1)
    for (std::size_t b1 = 0; b1 < db; ++b1)
      for (std::size_t a2 = 0; a2 < da; ++a2)
        for (std::size_t b2 = 0; b2 < db; ++b2)
          out(static_cast<Eigen::Index>(split.compose(a1, b1)), static_cast<Eigen::Index>(split.compose(a2, b2))) =
              rho(static_cast<Eigen::Index>(split.compose(a2, b1)), static_cast<Eigen::Index>(split.compose(a1, b2)));
  return out;
}

Matrix partial_transpose(const DensityOperator& rho, const std::vector<int>& subset) {
  return partial_transpose(rho.matrix(), rho.shape(), subset);
}

namespace {

std::vector<std::size_t> permutation_table(const SystemShape& shape, const std::vector<int>& perm) {
  if (perm.size() != shape.size()) throw InvalidArgument("permutation length does not match subsystem count");
  check_indices(shape, perm, "permute");
  return gather_table(shape, perm);
}

SystemShape permuted_shape(const SystemShape& shape, const std::vector<int>& perm) {
  std::vector<std::string> l;
  std::vector<int> d;
  for (int i : perm) {
    l.push_back(shape.label(static_cast<std::size_t>(i)));
    d.push_back(shape.dim(static_cast<std::size_t>(i)));
  }
  return SystemShape(std::move(l), std::move(d));
}

std::vector<int> block_order(const Partition& p) {
  std::vector<int> order;
  for (const auto& b : p.blocks()) order.insert(order.end(), b.begin(), b.end());
  return order;
}

}  // namespace

PureState permute(const PureState& psi, const std::vector<int>& perm) {
  auto table = permutation_table(psi.shape(), perm);
  Vector out(psi.amplitudes().size());
  for (std::size_t f = 0; f < table.size(); ++f) out(static_cast<Eigen::Index>(f)) = psi.amplitudes()(static_cast<Eigen::Index>(table[f]));
  return PureState(permuted_shape(psi.shape(), perm), std::move(out));
}

DensityOperator permute(const DensityOperator& rho, const std::vector<int>& perm) {
  auto table = permutation_table(rho.shape(), perm);
  const auto n = table.size();
  Matrix out(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rho.matrix()(static_cast<Eigen::Index>(table[i]), static_cast<Eigen::Index>(table[j]));
  return make_density_unchecked(permuted_shape(rho.shape(), perm), std::move(out));
}

PureState regroup(const PureState& psi, const Partition& p) {
  if (!p.covers(psi.parties()))
    throw InvalidArgument("regroup of a pure state needs a partition covering all subsystems; use regroup_marginal");
  PureState moved = permute(psi, block_order(p));
  return PureState(psi.shape().grouped(p), moved.amplitudes());
}

DensityOperator regroup(const DensityOperator& rho, const Partition& p) {
  if (p.empty()) throw InvalidArgument("regroup: empty partition");
  const auto support = p.support();
  for (int i : support)
    if (static_cast<std::size_t>(i) >= rho.parties()) throw InvalidArgument("regroup: partition index out of range");
  DensityOperator reduced = support.size() == rho.parties() ? rho : partial_trace(rho, support);
  // re-index the partition onto the reduced system
  std::vector<Block> local;
  for (const auto& b : p.blocks()) {
    Block lb;
    for (int i : b) lb.push_back(static_cast<int>(std::lower_bound(support.begin(), support.end(), i) - support.begin()));
    local.push_back(std::move(lb));
  }
  Partition lp(std::move(local));
  DensityOperator moved = permute(reduced, block_order(lp));
  return make_density_unchecked(reduced.shape().grouped(lp), moved.matrix());
}

DensityOperator regroup_marginal(const PureState& psi, const Partition& p) {
  if (p.covers(psi.parties())) return DensityOperator::from_pure(regroup(psi, p));
  const auto support = p.support();
  for (int i : support)
    if (static_cast<std::size_t>(i) >= psi.parties()) throw InvalidArgument("regroup: partition index out of range");
  std::vector<Block> local;
  for (const auto& b : p.blocks()) {
    Block lb;
    for (int i : b) lb.push_back(static_cast<int>(std::lower_bound(support.begin(), support.end(), i) - support.begin()));
    local.push_back(std::move(lb));
  }
  return regroup(partial_trace(psi, support), Partition(std::move(local)));
}

PureState ungroup(const PureState& grouped, const SystemShape& original, const Partition& p) {
  if (!p.covers(original.size())) throw InvalidArgument("ungroup needs a covering partition");
  if (!(grouped.shape() == original.grouped(p))) throw InvalidArgument("ungroup: grouped shape does not match partition");
  const auto order = block_order(p);
  std::vector<std::string> l;
  std::vector<int> d;
  for (int i : order) {
    l.push_back(original.label(static_cast<std::size_t>(i)));
    d.push_back(original.dim(static_cast<std::size_t>(i)));
  }
  PureState split(SystemShape(std::move(l), std::move(d)), grouped.amplitudes());
  std::vector<int> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) inverse[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return permute(split, inverse);
}

PureState tensor(const PureState& a, const PureState& b) {
  auto l = a.shape().labels();
  auto d = a.shape().dims();
  l.insert(l.end(), b.shape().labels().begin(), b.shape().labels().end());
  d.insert(d.end(), b.shape().dims().begin(), b.shape().dims().end());
  Vector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  return PureState::normalized(SystemShape(std::move(l), std::move(d)), std::move(v));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  auto l = a.shape().labels();
  auto d = a.shape().dims();
  l.insert(l.end(), b.shape().labels().begin(), b.shape().labels().end());
  d.insert(d.end(), b.shape().dims().begin(), b.shape().dims().end());
  const auto na = a.matrix().rows(), nb = b.matrix().rows();
  Matrix m(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  return make_density_unchecked(SystemShape(std::move(l), std::move(d)), std::move(m));
}

Vector apply_local(const Vector& psi, const SystemShape& shape, int party, const Matrix& op) {
  const int d = shape.dim(static_cast<std::size_t>(party));
  if (op.rows() != d || op.cols() != d) throw InvalidArgument("apply_local: operator size does not match subsystem");
  IndexSplit split(shape, {party});
  Matrix m;
  split.reshape(psi, m);
  Matrix r = op * m;
  Vector out(psi.size());
  for (std::size_t a = 0; a < split.inner_dim(); ++a)
    for (std::size_t b = 0; b < split.outer_dim(); ++b)
      out(static_cast<Eigen::Index>(split.compose(a, b))) = r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return out;
}

PureState apply_local(const PureState& psi, int party, const Matrix& op) {
  return PureState::normalized(psi.shape(), apply_local(psi.amplitudes(), psi.shape(), party, op));
}

Matrix random_unitary(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0) q.col(k) *= diag / mag;
  }
  return q;
}

PureState random_pure(const SystemShape& shape, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(shape.total_dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return PureState::normalized(shape, std::move(v));
}

PureState random_pure(const SystemShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(shape, rng);
}

DensityOperator random_density(const SystemShape& shape, int rank, Rng& rng) {
  if (rank < 1) throw InvalidArgument("random_density: rank must be at least 1");
  const auto D = static_cast<Eigen::Index>(shape.total_dim());
  if (rank > D) throw InvalidArgument("random_density: rank exceeds dimension");
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix gmat(D, rank);
  for (Eigen::Index i = 0; i < D; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) gmat(i, j) = Complex(g(rng), g(rng));
  Matrix rho = gmat * gmat.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(shape, std::move(rho));
}

DensityOperator random_density(const SystemShape& shape, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(shape, rank, rng);
}

PureState basis_state(const SystemShape& shape, const std::vector<int>& digits) {
  if (digits.size() != shape.size()) throw InvalidArgument("basis_state: wrong number of digits");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] < 0 || digits[k] >= shape.dim(k)) throw InvalidArgument("basis_state: digit out of range");
    idx = idx * static_cast<std::size_t>(shape.dim(k)) + static_cast<std::size_t>(digits[k]);
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.total_dim()));
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return PureState(shape, std::move(v));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("max_abs_diff: size mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace gmekit
