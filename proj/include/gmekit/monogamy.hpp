#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmekit/convex_roof.hpp"

namespace gmekit {

/// 64 logarithmically spaced exponents in [0.25, 8].
std::vector<double> default_alpha_grid();

enum class AuditMode { Complete, Tight, Disentangling };
std::string to_string(AuditMode m);
/// "complete", "tight" or "disentangling"; throws ParseError otherwise.
AuditMode parse_audit_mode(std::string_view text);

struct AuditConfig {
  RoofConfig roof;
  std::vector<double> alpha_grid = default_alpha_grid();
  /// Margin for strict inequalities.
  double strict_margin = 1e-9;
  /// |difference| at or below this counts as an equality case.
  double equality_tol = 1e-4;
  /// Values at or below this count as vanishing in an equality case.
  double leftover_tol = 1e-3;
  /// Width to which the first sign change of a residual is bisected.
  double alpha_resolution = 1e-3;
  /// Restart multiplier for re-running children that look violating.
  int rerun_factor = 4;
  /// Evaluate every equality case even once a violation is established.
  bool exhaustive = false;

  /// Throws InvalidArgument on an empty or non-positive grid.
  void validate() const;
};

/// One marginal (or regrouped) value entering an audit.
struct ChildValue {
  Partition partition;
  double value = 0.0;
  /// False for convex-roof upper bounds.
  bool exact = true;
  std::string method;
  bool genuine = false;
  /// parent - value, or the residual that the mode compares.
  double margin = 0.0;
  bool violated = false;
  /// Restarts used for this value (0 when no roof was needed).
  int restarts = 0;
};

/// E^a(parent) - sum_children E^a(child) over the grid, for one group of
/// children.
struct PowerResidual {
  /// Number of blocks of the children in the group (complete mode), or the
  /// combined partition's label (tight mode).
  std::string group;
  std::vector<Partition> children;
  std::vector<double> residuals;
  /// Smallest grid exponent meeting the inequality.
  std::optional<double> alpha_star;
  /// First sign change refined by bisection.
  std::optional<double> alpha_boundary;
  /// Number of sign changes across the grid.
  int sign_changes = 0;
  /// Whether the inequality is strict (>) or not (>=).
  bool strict = true;
};

/// Equality between the parent and a combined child, with the values on the
/// corresponding Xi set.
struct EqualityCase {
  Partition child;
  double residual = 0.0;
  bool evaluated = false;
  std::vector<ChildValue> xi_values;
  bool all_vanish = false;
};

/// One disentangling-type condition: lhs = rhs forces the leftovers to 0.
struct DisentanglingCondition {
  std::string name;
  std::string lhs_label, rhs_label;
  double lhs = 0.0, rhs = 0.0;
  bool triggered = false;
  std::vector<ChildValue> leftovers;
  bool consistent = true;
};

struct MonogamyReport {
  std::string state_id;
  MeasureSpec spec;
  AuditMode mode = AuditMode::Complete;
  SystemShape shape;
  bool vacuous = false;
  std::string vacuous_reason;
  double parent_value = 0.0;
  bool parent_exact = true;
  std::vector<ChildValue> children;
  std::vector<double> alpha_grid;
  std::vector<PowerResidual> power;
  /// Smallest grid exponent meeting every power inequality at once.
  std::optional<double> alpha_star;
  std::vector<EqualityCase> equality_cases;
  std::vector<DisentanglingCondition> conditions;
  bool violated = false;
  /// A violation rests on roof upper bounds that survived a re-run.
  bool possibly_artifact = false;
  /// Smallest margin seen (negative when violated); empty when no
  /// comparison was made.
  std::optional<double> worst_margin;
  std::vector<std::string> notes;
};

/// parent^a - sum_i child_i^a; shared by the audits and their re-checks so
/// that recomputation from stored values is bit-identical.
double power_residual(double parent, const std::vector<double>& children, double alpha);

/// Definition-3 audit: the genuine value of the whole state against every
/// marginal obtained by discarding parties (levels 2..m-1), plus one power
/// inequality per level. Level-2 children use the plain measure.
MonogamyReport audit_complete(const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg = {},
                              const std::string& state_id = {});

/// Genuine disentangling audit against every combine coarsening. The family
/// must be complete (ef, tau, concurrence, tsallis, sum1234_2) or gmc; party
/// families are evaluated in their genuine variant. Pure states only.
MonogamyReport audit_tight(const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg = {},
                           const std::string& state_id = {});

/// The three tripartite equality conditions: E(A|BC) = E(AB), E(ABC) = E(AB)
/// and E_g(ABC) = E(A|BC). Requires three parties.
MonogamyReport audit_disentangling(const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg = {},
                                   const std::string& state_id = {});

MonogamyReport run_audit(AuditMode mode, const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg = {},
                         const std::string& state_id = {});

struct CampaignConfig {
  MeasureSpec spec;
  AuditMode mode = AuditMode::Complete;
  SystemShape shape = SystemShape::qubits(3);
  int samples = 100;
  std::uint64_t seed = 42;
  AuditConfig audit;
  int threads = 1;

  void validate() const;
};

struct CampaignSample {
  int index = 0;
  std::uint64_t seed = 0;
  PureState state;
  MonogamyReport report;
};

struct CampaignResult {
  CampaignConfig config;
  int samples = 0;
  int violations = 0;
  int vacuous = 0;
  int equality_occurrences = 0;
  int artifact_flags = 0;
  /// alpha_star per non-vacuous sample (empty entries when none on the grid).
  std::vector<std::optional<double>> alpha_stars;
  /// Lowest worst_margin, ties to the lowest index.
  std::optional<CampaignSample> worst;
  std::vector<CampaignSample> violating;
};

/// Seed of sample `index` in a campaign seeded with `seed`.
std::uint64_t sample_seed(std::uint64_t seed, int index);

/// Audits `samples` Haar-random pure states. Deterministic for fixed config,
/// independent of `threads`.
CampaignResult campaign(const CampaignConfig& cfg);

}  // namespace gmekit
