#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gmekit/partition.hpp"
#include "gmekit/spectral.hpp"
#include "gmekit/state.hpp"

namespace gmekit {

/// Measure families. Ef..FidAF are evaluated block by block on pure states;
/// GMC and the two split sums carry their own delta gate.
enum class Family {
  Ef,
  Tau,
  Concurrence,
  NegativityN,
  TsallisT,
  RenyiR,
  FidF,
  FidSqrtF,
  FidAF,
  GMC,
  Sum1234_2,
  Sum1234_3,
};

enum class Variant { Plain, Genuine };
enum class MixedStrategy { ConvexRoof, Direct };

/// Default tolerance on marginal purity deciding product structure.
inline constexpr double kDeltaTol = 1e-8;

struct MeasureSpec {
  Family family = Family::Tau;
  EntropyParams params{};
  Variant variant = Variant::Plain;
  MixedStrategy mixed = MixedStrategy::ConvexRoof;
  /// Per-split measure of the Sum1234_* families.
  Family inner = Family::Concurrence;
  double delta_tol = kDeltaTol;

  /// Throws InvalidArgument on inconsistent combinations (direct strategy
  /// outside NegativityN, nested sums, bad entropy parameters).
  void validate() const;

  /// True when the value includes the delta gate, either through the
  /// variant or because the family is inherently genuine.
  bool gated() const noexcept;

  /// Short identifier such as "tau_g" or "sum1234_2[concurrence]".
  std::string name() const;
};

std::string to_string(Family f);
std::string to_string(Variant v);
std::string to_string(MixedStrategy s);

/// Parses a family name. Accepts the canonical names plus aliases such as
/// "c", "n", "tsallis", "renyi"; a "_g" suffix ("tau_g", "c_g") also selects
/// the genuine variant, reported through `genuine` when non-null.
Family parse_family(std::string_view name, bool* genuine = nullptr);

/// Families that evaluate block by block (everything except GMC and sums).
bool is_party_family(Family f) noexcept;
/// Families shown complete: Ef, Tau, Concurrence, TsallisT, Sum1234_2.
bool is_complete_family(Family f) noexcept;
/// Families the paper shows unified but not complete.
bool is_unified_only_family(Family f) noexcept;
/// Families whose pure-state value is additive over tensor products.
bool is_additive_family(Family f) noexcept;

/// Evaluates a block-by-block family on pure states over a fixed shape and
/// covering partition, reusing preallocated workspace between calls.
///
/// Not thread-safe; copy one per thread.
class PartyKernel {
 public:
  PartyKernel(Family family, const EntropyParams& params, const SystemShape& shape, const Partition& partition);

  /// Value for a normalized amplitude vector over `shape`.
  double operator()(const Vector& psi);

  const Partition& partition() const noexcept { return partition_; }

 private:
  void marginal(std::size_t block, const Vector& psi);
  void apply_block(std::size_t block, const Matrix& op, Vector& v);

  Family family_;
  EntropyParams params_;
  Partition partition_;
  std::vector<IndexSplit> splits_;
  std::vector<Matrix> ops_;
  Matrix m_, rho_, r_;
  Vector work_;
  Eigen::SelfAdjointEigenSolver<Matrix> es_;
};

/// Purity of one side of a bipartition, evaluated through the smaller side.
class CutPurity {
 public:
  CutPurity(const SystemShape& shape, std::vector<int> side);
  double operator()(const Vector& psi);

 private:
  IndexSplit split_;
  bool transpose_;
  Matrix m_, rho_;
};

/// Plain value of a block-by-block family on `psi` across a covering
/// partition. Throws InvalidArgument if the partition does not cover the
/// shape, if the family is delta-gated or if spec.variant is Genuine.
double evaluate_pure(const MeasureSpec& spec, const PureState& psi, const Partition& partition);

/// Two-block value. Concurrence gives sqrt(2(1 - tr rho_X^2)) for the first
/// block X; other families use the k = 2 formula. Throws InvalidArgument for
/// anything but a covering two-block partition.
double bipartite_value(Family family, const PureState& psi, const Partition& bipartition, const EntropyParams& params = {});

/// sum_i ||rho^{T_i}||_tr - m over single-party partial transposes.
double negativity_mixed(const DensityOperator& rho);

/// |E(left (x) right) - E(left) - E(right)| with each term over the finest
/// partition of its own parties.
double unification_check(const MeasureSpec& spec, const PureState& left, const PureState& right);

}  // namespace gmekit
