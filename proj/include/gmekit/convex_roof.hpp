#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmekit/genuine.hpp"

namespace gmekit {

/// Search settings for the convex-roof minimization.
struct RoofConfig {
  /// Number of ensemble members n, rank <= n <= rank^2. 0 picks
  /// min(rank^2, rank + 4).
  int ensemble_size = 0;
  /// Independent starts; start 0 is always the eigen-ensemble.
  int restarts = 32;
  /// Maximum conjugate-gradient iterations per start, shared by the
  /// smoothing stages.
  int max_iters = 500;
  /// A stage gaining less than this per iteration ends.
  double step_tol = 1e-10;
  std::uint64_t seed = 42;
  /// Worker threads for the starts; results do not depend on this.
  int threads = 1;

  /// Throws InvalidArgument on non-positive counts or tolerances.
  void validate() const;
  /// Ensemble size actually used for a state of the given rank.
  int members_for_rank(int rank) const;
};

/// Best decomposition found. `value` bounds the true roof from above.
struct RoofResult {
  double value = 0.0;
  Ensemble ensemble;
  std::vector<double> member_values;
  bool converged = false;
  int restarts_used = 0;
  int best_restart = 0;
  int rank = 0;
  /// Objective of the eigen-ensemble; value never exceeds it.
  double eigen_value = 0.0;
};

/// min sum_i p_i E(psi_i) over decompositions psi_i = sum_j V_ij sqrt(l_j) e_j
/// with V an n x r isometry, searched by Riemannian conjugate gradient on the
/// isometries from random starts. Rank-one input returns the single pure member exactly.
RoofResult roof_minimize(const PureFunctional& measure, const DensityOperator& rho, const RoofConfig& cfg = {});

/// As roof_minimize with every member weighted by its exact delta gate
/// (purity tolerance `delta_tol` on the cuts of rho's parties).
RoofResult roof_minimize_genuine(const PureFunctional& measure, const DensityOperator& rho, const RoofConfig& cfg = {},
                                 double delta_tol = kDeltaTol);

/// delta(psi) * measure(psi) for pure states over `shape`.
PureFunctional gate_functional(PureFunctional measure, const SystemShape& shape, double delta_tol = kDeltaTol);

/// Outcome of the decomposition search for a biseparable ensemble. Found
/// means an explicit ensemble of biseparable members was produced; a miss is
/// never a proof of genuine entanglement.
struct BiseparabilityCertificate {
  bool found = false;
  /// GMC roof value of the best ensemble (0 when found, up to tolerance).
  double residual = 0.0;
  Ensemble ensemble;
};

inline constexpr double kCertificateTol = 1e-6;

BiseparabilityCertificate biseparability_certificate(const DensityOperator& rho, const RoofConfig& cfg = {},
                                                     double tol = kCertificateTol);

/// A measure value for an arbitrary state and partition.
struct Evaluation {
  double value = 0.0;
  /// False when the value is a numerical roof upper bound.
  bool exact = true;
  /// "pure", "convex_roof" or "direct".
  std::string method;
  std::optional<RoofResult> roof;
  /// Set when the direct strategy needed a mixed-state delta.
  std::optional<BiseparabilityCertificate> certificate;
};

/// Evaluates `spec` on `state` viewed across `partition` (at least two
/// blocks). Pure states with covering partitions are exact; anything else
/// goes through the marginal and either the convex roof or, for negativity
/// with the direct strategy, the partial-transpose form.
Evaluation evaluate_state(const MeasureSpec& spec, const AnyState& state, const Partition& partition,
                          const RoofConfig& cfg = {});

/// Members of `e` are all biseparable (pure-state delta = 0).
bool all_members_biseparable(const Ensemble& e, double tol = kDeltaTol);

}  // namespace gmekit
