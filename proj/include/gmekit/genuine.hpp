#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gmekit/measures.hpp"

namespace gmekit {

/// Outcome of the pure-state delta gate.
struct DeltaVerdict {
  /// 1 for genuinely entangled, 0 for biseparable.
  int value = 1;
  /// First bipartition (in all_bipartitions order) with product structure.
  std::optional<Partition> witness;
  /// Smallest 1 - tr rho_X^2 over all cuts.
  double max_offproduct = 0.0;
};

/// GMC value together with the cut attaining it.
struct GmcResult {
  double value = 0.0;
  Partition cut;
};

/// delta over the parties of `psi`: 0 iff some bipartition has marginal
/// purity >= 1 - tol. Throws InvalidShape for fewer than two parties.
DeltaVerdict delta_pure(const PureState& psi, double tol = kDeltaTol);

/// min over bipartitions of sqrt(2 [1 - tr rho_X^2]).
double gmc_pure(const PureState& psi);
/// As gmc_pure, reporting the first cut reaching the minimum.
GmcResult gmc_with_cut(const PureState& psi);

/// delta(psi over the blocks of `partition`) times the plain value. The
/// partition must cover the shape; for a coarser view with discarded parties
/// use the mixed-state evaluation in convex_roof.hpp.
double evaluate_genuine_pure(const MeasureSpec& spec, const PureState& psi, const Partition& partition);

/// The six three-block splits A|B|CD, A|BC|D, AC|B|D, AB|C|D, AD|B|C, A|BD|C.
std::vector<Partition> four_party_tripartitions();

/// delta times the sum of the inner bipartite value over every bipartition.
/// The named form requires exactly four parties.
double sum_1234_2(Family inner, const PureState& psi, const EntropyParams& params = {});
/// Same sum for any number of parties >= 2.
double sum_over_bipartitions(Family inner, const PureState& psi, const EntropyParams& params = {});
/// delta times the sum of the inner tripartite value over the six splits.
/// Requires exactly four parties.
double sum_1234_3(Family inner, const PureState& psi, const EntropyParams& params = {});

/// Value of `spec` (any family, either variant) on `psi` viewed across a
/// covering partition.
double evaluate(const MeasureSpec& spec, const PureState& psi, const Partition& partition);

/// Pure-state functional over a fixed shape and covering partition:
/// normalized amplitudes in, measure value out (delta gate included when
/// spec.gated()). Each copy owns its workspace.
using PureFunctional = std::function<double(const Vector&)>;

PureFunctional make_pure_functional(const MeasureSpec& spec, const SystemShape& shape, const Partition& partition);
/// Over the finest partition of `shape`.
PureFunctional make_pure_functional(const MeasureSpec& spec, const SystemShape& shape);

/// The same functional with the delta gate left out (GMC without the snap to
/// zero, split sums without the gate).
PureFunctional make_ungated_functional(const MeasureSpec& spec, const SystemShape& shape);

/// Functional for min over cuts of 2 [1 - tr rho_X^2] (squared GMC).
PureFunctional make_squared_gmc_functional(const SystemShape& shape);

/// Maps a partition of block indices onto the subsystems of `base`:
/// outer block {0, 2} becomes base.block(0) u base.block(2).
Partition compose_blocks(const Partition& outer, const Partition& base);

}  // namespace gmekit
