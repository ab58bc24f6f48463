#include "gmekit/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gmekit/errors.hpp"

namespace gmekit {

std::vector<double> default_alpha_grid() {
  std::vector<double> grid(64);
  for (int k = 0; k < 64; ++k) grid[static_cast<std::size_t>(k)] = 0.25 * std::pow(32.0, k / 63.0);
  grid.back() = 8.0;
  return grid;
}

std::string to_string(AuditMode m) {
  switch (m) {
    case AuditMode::Complete: return "complete";
    case AuditMode::Tight: return "tight";
    case AuditMode::Disentangling: return "disentangling";
  }
  return "unknown";
}

AuditMode parse_audit_mode(std::string_view text) {
  if (text == "complete") return AuditMode::Complete;
  if (text == "tight") return AuditMode::Tight;
  if (text == "disentangling") return AuditMode::Disentangling;
  throw ParseError("unknown audit mode '" + std::string(text) + "'");
}

void AuditConfig::validate() const {
  roof.validate();
  if (alpha_grid.empty()) throw InvalidArgument("alpha grid is empty");
  for (double a : alpha_grid)
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("alpha grid values must be positive and finite");
  if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end())) throw InvalidArgument("alpha grid must be ascending");
  if (!(strict_margin >= 0.0) || !(equality_tol > 0.0) || !(leftover_tol > 0.0) || !(alpha_resolution > 0.0))
    throw InvalidArgument("audit tolerances must be positive");
  if (rerun_factor < 1) throw InvalidArgument("rerun factor must be at least 1");
}

double power_residual(double parent, const std::vector<double>& children, double alpha) {
  double r = std::pow(parent, alpha);
  for (double c : children) r -= std::pow(c, alpha);
  return r;
}

namespace {

MeasureSpec genuine_of(MeasureSpec s) {
  if (is_party_family(s.family)) s.variant = Variant::Genuine;
  return s;
}

MeasureSpec plain_of(MeasureSpec s) {
  s.variant = Variant::Plain;
  return s;
}

ChildValue evaluate_child(const MeasureSpec& spec, const AnyState& state, const Partition& p, const RoofConfig& roof) {
  const Evaluation e = evaluate_state(spec, state, p, roof);
  ChildValue c;
  c.partition = p;
  c.value = e.value;
  c.exact = e.exact;
  c.method = e.method;
  c.genuine = spec.gated();
  c.restarts = e.roof ? e.roof->restarts_used : 0;
  return c;
}

// Re-evaluates a suspicious roof value with more restarts; the first starts
// are shared, so the value can only go down.
void rerun(ChildValue& c, const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg) {
  RoofConfig more = cfg.roof;
  more.restarts *= cfg.rerun_factor;
  const ChildValue again = evaluate_child(spec, state, c.partition, more);
  c.value = std::min(c.value, again.value);
  c.restarts = again.restarts;
}

bool vacuous_state(const AnyState& state, const RoofConfig& roof, std::string& reason) {
  if (const auto* psi = std::get_if<PureState>(&state)) {
    const DeltaVerdict d = delta_pure(*psi);
    if (d.value == 0) {
      reason = "pure state is biseparable";
      return true;
    }
    return false;
  }
  const BiseparabilityCertificate cert = biseparability_certificate(std::get<DensityOperator>(state), roof);
  if (cert.found) {
    reason = "a biseparable decomposition was found";
    return true;
  }
  return false;
}

PowerResidual power_group(const std::string& group, double parent, const std::vector<const ChildValue*>& children,
                          const AuditConfig& cfg, bool strict) {
  PowerResidual pr;
  pr.group = group;
  pr.strict = strict;
  std::vector<double> values;
  for (const auto* c : children) {
    pr.children.push_back(c->partition);
    values.push_back(c->value);
  }
  auto holds = [&](double r) { return strict ? r > cfg.strict_margin : r >= -cfg.strict_margin; };
  std::optional<bool> previous;
  for (std::size_t k = 0; k < cfg.alpha_grid.size(); ++k) {
    const double r = power_residual(parent, values, cfg.alpha_grid[k]);
    pr.residuals.push_back(r);
    const bool ok = holds(r);
    if (previous && *previous != ok) ++pr.sign_changes;
    previous = ok;
    if (ok && !pr.alpha_star) {
      pr.alpha_star = cfg.alpha_grid[k];
      if (k > 0) {
        double lo = cfg.alpha_grid[k - 1], hi = cfg.alpha_grid[k];
        while (hi - lo > cfg.alpha_resolution) {
          const double mid = 0.5 * (lo + hi);
          (holds(power_residual(parent, values, mid)) ? hi : lo) = mid;
        }
        pr.alpha_boundary = hi;
      }
    }
  }
  return pr;
}

std::optional<double> joint_alpha_star(const std::vector<PowerResidual>& groups, const std::vector<double>& grid,
                                       const AuditConfig& cfg) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    bool all = true;
    for (const auto& g : groups) {
      const double r = g.residuals[k];
      all = all && (g.strict ? r > cfg.strict_margin : r >= -cfg.strict_margin);
    }
    if (all) return grid[k];
  }
  return std::nullopt;
}

void update_worst(MonogamyReport& r, double margin) {
  r.worst_margin = r.worst_margin ? std::min(*r.worst_margin, margin) : margin;
}

MonogamyReport start_report(AuditMode mode, const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg,
                            const std::string& id) {
  spec.validate();
  cfg.validate();
  MonogamyReport r;
  r.state_id = id;
  r.spec = spec;
  r.mode = mode;
  r.shape = shape_of(state);
  r.alpha_grid = cfg.alpha_grid;
  return r;
}

std::vector<std::vector<int>> subsets_of_size(int m, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == l) {
      out.push_back(cur);
      return;
    }
    for (int i = next; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

MonogamyReport audit_complete(const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg,
                              const std::string& state_id) {
  MonogamyReport r = start_report(AuditMode::Complete, spec, state, cfg, state_id);
  const int m = static_cast<int>(r.shape.size());
  if (m < 3) throw InvalidShape("the complete audit needs at least three parties");
  const MeasureSpec g = genuine_of(spec);
  const Partition whole = finest_partition(static_cast<std::size_t>(m));

  if (vacuous_state(state, cfg.roof, r.vacuous_reason)) {
    r.vacuous = true;
    return r;
  }
  const Evaluation parent = evaluate_state(g, state, whole, cfg.roof);
  r.parent_value = parent.value;
  r.parent_exact = parent.exact;

  for (int l = 2; l < m; ++l) {
    const MeasureSpec child_spec = l == 2 ? plain_of(spec) : g;
    for (const auto& subset : subsets_of_size(m, l)) {
      std::vector<Block> blocks;
      for (int i : subset) blocks.push_back({i});
      const Partition p(std::move(blocks));
      if (!is_coarser(whole, p, CoarsenMode::discard_only())) throw std::logic_error("complete audit: child is not a discard coarsening");
      ChildValue c = evaluate_child(child_spec, state, p, cfg.roof);
      if (r.parent_value - c.value <= cfg.strict_margin && !c.exact) {
        rerun(c, child_spec, state, cfg);
        if (r.parent_value - c.value <= cfg.strict_margin) r.possibly_artifact = true;
      }
      c.margin = r.parent_value - c.value;
      c.violated = c.margin <= cfg.strict_margin;
      r.violated = r.violated || c.violated;
      update_worst(r, c.margin);
      r.children.push_back(std::move(c));
    }
  }
  if (!r.violated) r.possibly_artifact = false;

  for (int l = 2; l < m; ++l) {
    std::vector<const ChildValue*> level;
    for (const auto& c : r.children)
      if (static_cast<int>(c.partition.size()) == l) level.push_back(&c);
    r.power.push_back(power_group(std::to_string(l), r.parent_value, level, cfg, true));
  }
  r.alpha_star = joint_alpha_star(r.power, cfg.alpha_grid, cfg);
  if (!r.alpha_star) r.notes.push_back("no exponent on the grid satisfies every power inequality");
  if (!r.parent_exact) r.notes.push_back("parent value is a convex-roof upper bound");
  return r;
}

MonogamyReport audit_tight(const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg,
                           const std::string& state_id) {
  if (!is_complete_family(spec.family) && spec.family != Family::GMC)
    throw InvalidArgument("the tight audit needs a complete family; " + to_string(spec.family) + " is not one");
  MonogamyReport r = start_report(AuditMode::Tight, spec, state, cfg, state_id);
  const int m = static_cast<int>(r.shape.size());
  if (m < 3) throw InvalidShape("the tight audit needs at least three parties");
  const MeasureSpec g = genuine_of(spec);
  r.spec = g;
  const Partition whole = finest_partition(static_cast<std::size_t>(m));

  if (vacuous_state(state, cfg.roof, r.vacuous_reason)) {
    r.vacuous = true;
    return r;
  }
  const Evaluation parent = evaluate_state(g, state, whole, cfg.roof);
  r.parent_value = parent.value;
  r.parent_exact = parent.exact;

  for (const auto& p : coarsenings(whole, CoarsenMode::combine_only(), 2)) {
    if (!is_coarser(whole, p, CoarsenMode::combine_only())) throw std::logic_error("tight audit: child is not a combine coarsening");
    ChildValue c = evaluate_child(g, state, p, cfg.roof);
    if (r.parent_value - c.value < -cfg.equality_tol && !c.exact) {
      rerun(c, g, state, cfg);
      if (r.parent_value - c.value < -cfg.equality_tol) r.possibly_artifact = true;
    }
    c.margin = r.parent_value - c.value;
    c.violated = c.margin < -cfg.equality_tol;
    r.violated = r.violated || c.violated;
    update_worst(r, c.margin);
    r.children.push_back(std::move(c));
  }

  for (const auto& c : r.children) {
    if (std::abs(c.margin) > cfg.equality_tol) continue;
    EqualityCase eq;
    eq.child = c.partition;
    eq.residual = c.margin;
    if (!r.violated || cfg.exhaustive) {
      eq.evaluated = true;
      eq.all_vanish = true;
      for (const auto& xi : xi_set(whole, c.partition)) {
        ChildValue v = evaluate_child(g, state, xi, cfg.roof);
        v.margin = cfg.leftover_tol - v.value;
        v.violated = v.value > cfg.leftover_tol;
        eq.all_vanish = eq.all_vanish && !v.violated;
        eq.xi_values.push_back(std::move(v));
      }
      if (!eq.all_vanish) r.violated = true;
    }
    r.equality_cases.push_back(std::move(eq));
  }
  if (!r.violated) r.possibly_artifact = false;

  if (m == 3) {
    const MeasureSpec plain = plain_of(spec);
    for (const auto& c : r.children) {
      if (c.partition.size() != 2) continue;
      const Block& pair = c.partition.block(0).size() == 2 ? c.partition.block(0) : c.partition.block(1);
      ChildValue pv = evaluate_child(plain, state, Partition({{pair[0]}, {pair[1]}}), cfg.roof);
      ChildValue bv = evaluate_child(plain, state, c.partition, cfg.roof);
      r.power.push_back(power_group(format_partition(c.partition, r.shape.labels()), r.parent_value, {&pv, &bv}, cfg, false));
    }
    r.alpha_star = joint_alpha_star(r.power, cfg.alpha_grid, cfg);
  }
  if (!r.parent_exact) r.notes.push_back("parent value is a convex-roof upper bound");
  return r;
}

MonogamyReport audit_disentangling(const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg,
                                   const std::string& state_id) {
  MonogamyReport r = start_report(AuditMode::Disentangling, spec, state, cfg, state_id);
  if (r.shape.size() != 3) throw InvalidShape("the disentangling audit needs exactly three parties");
  const MeasureSpec plain = plain_of(spec);
  const MeasureSpec g = genuine_of(spec);
  const Partition a_bc({{0}, {1, 2}}), ab({{0}, {1}}), ac({{0}, {2}}), bc({{1}, {2}}), abc = finest_partition(3);
  const auto& labels = r.shape.labels();

  auto value = [&](const MeasureSpec& s, const Partition& p) { return evaluate_state(s, state, p, cfg.roof).value; };
  auto condition = [&](std::string name, const MeasureSpec& ls, const Partition& lp, const Partition& rp,
                       std::vector<Partition> left) {
    DisentanglingCondition c;
    c.name = std::move(name);
    c.lhs_label = format_partition(lp, labels) + (ls.gated() ? " (genuine)" : "");
    c.rhs_label = format_partition(rp, labels);
    c.lhs = value(ls, lp);
    c.rhs = value(plain, rp);
    c.triggered = std::abs(c.lhs - c.rhs) <= cfg.equality_tol;
    if (c.triggered) {
      for (const auto& p : left) {
        ChildValue v = evaluate_child(plain, state, p, cfg.roof);
        v.margin = cfg.leftover_tol - v.value;
        v.violated = v.value > cfg.leftover_tol;
        c.consistent = c.consistent && !v.violated;
        update_worst(r, v.margin);
        c.leftovers.push_back(std::move(v));
      }
    }
    r.violated = r.violated || !c.consistent;
    r.conditions.push_back(std::move(c));
  };
  condition("cond", plain, a_bc, ab, {ac});
  condition("complete", plain, abc, ab, {ac, bc});
  condition("tight", g, abc, a_bc, {bc});
  return r;
}

MonogamyReport run_audit(AuditMode mode, const MeasureSpec& spec, const AnyState& state, const AuditConfig& cfg,
                         const std::string& state_id) {
  switch (mode) {
    case AuditMode::Complete: return audit_complete(spec, state, cfg, state_id);
    case AuditMode::Tight: return audit_tight(spec, state, cfg, state_id);
    case AuditMode::Disentangling: return audit_disentangling(spec, state, cfg, state_id);
  }
  throw InvalidArgument("unknown audit mode");
}

void CampaignConfig::validate() const {
  if (samples < 1) throw InvalidArgument("a campaign needs at least one sample");
  if (threads < 1) throw InvalidArgument("threads must be at least 1");
  spec.validate();
  audit.validate();
}

std::uint64_t sample_seed(std::uint64_t seed, int index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(index) + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

CampaignResult campaign(const CampaignConfig& cfg) {
  cfg.validate();
  std::vector<std::optional<CampaignSample>> runs(static_cast<std::size_t>(cfg.samples));
  auto run = [&](int i) {
    CampaignSample s{i, sample_seed(cfg.seed, i), random_pure(cfg.shape, sample_seed(cfg.seed, i)), {}};
    s.report = run_audit(cfg.mode, cfg.spec, s.state, cfg.audit, "sample-" + std::to_string(i));
    runs[static_cast<std::size_t>(i)] = std::move(s);
  };
  const int workers = std::min(cfg.threads, cfg.samples);
  if (workers <= 1) {
    for (int i = 0; i < cfg.samples; ++i) run(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < cfg.samples; i += workers) run(i);
      });
    for (auto& t : pool) t.join();
  }

  CampaignResult res;
  res.config = cfg;
  res.samples = cfg.samples;
  for (auto& slot : runs) {
    CampaignSample& s = *slot;
    const MonogamyReport& rep = s.report;
    if (rep.vacuous) {
      ++res.vacuous;
      continue;
    }
    res.alpha_stars.push_back(rep.alpha_star);
    if (!rep.equality_cases.empty() ||
        std::any_of(rep.conditions.begin(), rep.conditions.end(), [](const auto& c) { return c.triggered; }))
      ++res.equality_occurrences;
    if (rep.possibly_artifact) ++res.artifact_flags;
    if (rep.violated) {
      ++res.violations;
      res.violating.push_back(s);
    }
    if (rep.worst_margin && (!res.worst || !res.worst->report.worst_margin ||
                             *rep.worst_margin < *res.worst->report.worst_margin))
      res.worst = s;
  }
  return res;
}

}  // namespace gmekit
