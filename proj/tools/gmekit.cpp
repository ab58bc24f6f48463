// gmekit command-line front end.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gmekit/errors.hpp"
#include "gmekit/fixtures.hpp"
#include "gmekit/paper_checks.hpp"
#include "gmekit/report.hpp"
#include "gmekit/state_io.hpp"

using namespace gmekit;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kInvariant = 3 };

struct SpecFlags {
  std::string family = "concurrence";
  bool genuine = false;
  double q = 2.0;
  double alpha = 0.5;
  std::string log_base = "2";
  std::string inner = "concurrence";
  std::string mixed = "convex_roof";
  double delta_tol = kDeltaTol;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "measure family (ef, tau, concurrence, negativity, tsallis, renyi, fid_f, "
                                        "fid_sqrt, fid_a, gmc, sum1234_2, sum1234_3; '_g' suffix for genuine)")
        ->capture_default_str();
    app->add_flag("--genuine", genuine, "use the delta-gated genuine variant");
    app->add_option("--q", q, "Tsallis q (> 1)")->capture_default_str();
    app->add_option("--alpha", alpha, "Renyi alpha in (0, 1)")->capture_default_str();
    app->add_option("--log-base", log_base, "von Neumann log base: 2 or e")->capture_default_str();
    app->add_option("--inner", inner, "inner family of the split sums")->capture_default_str();
    app->add_option("--mixed-strategy", mixed, "convex_roof or direct (negativity only)")->capture_default_str();
    app->add_option("--delta-tol", delta_tol, "purity tolerance of the delta gate")->capture_default_str();
  }

  MeasureSpec build() const {
    MeasureSpec s;
    bool suffix = false;
    s.family = parse_family(family, &suffix);
    s.variant = genuine || suffix ? Variant::Genuine : Variant::Plain;
    s.params.q = q;
    s.params.alpha = alpha;
    if (log_base == "2")
      s.params.log_base = LogBase::Two;
    else if (log_base == "e")
      s.params.log_base = LogBase::E;
    else
      throw ParseError("--log-base must be 2 or e");
    s.inner = parse_family(inner);
    if (mixed == "convex_roof")
      s.mixed = MixedStrategy::ConvexRoof;
    else if (mixed == "direct")
      s.mixed = MixedStrategy::Direct;
    else
      throw ParseError("--mixed-strategy must be convex_roof or direct");
    s.delta_tol = delta_tol;
    s.validate();
    return s;
  }
};

struct RoofFlags {
  RoofConfig cfg;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--restarts", cfg.restarts, "convex-roof restarts")->capture_default_str();
    app->add_option("--seed", seed, "random seed (falls back to GMEKIT_SEED, then 42)");
    app->add_option("--ensemble-size", cfg.ensemble_size, "decomposition size (0 = automatic)")->capture_default_str();
    app->add_option("--max-iters", cfg.max_iters, "descent iterations per restart")->capture_default_str();
    app->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
  }

  RoofConfig build() {
    cfg.seed = resolved_seed();
    cfg.validate();
    return cfg;
  }

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("GMEKIT_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw ParseError("GMEKIT_SEED is not an unsigned integer");
      }
    }
    return 42;
  }
};

struct StateFlags {
  std::string path;
  std::string fixture_name;

  void attach(CLI::App* app) {
    auto* s = app->add_option("--state", path, "state JSON file");
    auto* f = app->add_option("--fixture", fixture_name, "built-in state: ghz3, ghz4, w, phi+0, paper");
    s->excludes(f);
  }

  AnyState load() const {
    if (!path.empty()) return read_state_file(path);
    if (!fixture_name.empty()) return fixture(fixture_name);
    throw ParseError("one of --state or --fixture is required");
  }

  std::string id() const { return !path.empty() ? path : "fixture:" + fixture_name; }
};

struct Output {
  bool json = false;
  bool pretty = false;
  bool no_timing = false;

  void attach(CLI::App* app) {
    app->add_flag("--json", json, "machine-readable JSON (default)");
    app->add_flag("--pretty", pretty, "human-readable table");
    app->add_flag("--deterministic", no_timing, "omit the wall time so reruns are byte-identical");
  }
};

Partition partition_or_finest(const std::string& text, const SystemShape& shape) {
  return text.empty() ? finest_partition(shape.size()) : parse_partition(text, shape.labels());
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  if (text.empty()) return default_alpha_grid();
  if (text.rfind("log:", 0) == 0) {
    double lo = 0, hi = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text.substr(4));
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || !(lo > 0) || !(hi >= lo))
      throw ParseError("--alpha-grid log form is log:LO:HI:N");
    std::vector<double> g;
    for (int k = 0; k < n; ++k) g.push_back(n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
    return g;
  }
  std::vector<double> g;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      g.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad --alpha-grid entry '" + item + "'");
    }
  }
  std::sort(g.begin(), g.end());
  return g;
}

class Clock {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void emit(const Json& report) {
  std::cout << report.dump(2) << "\n";
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(10) << v;
  return o.str();
}

void print_audit(const MonogamyReport& r) {
  const auto& labels = r.shape.labels();
  std::cout << "audit " << to_string(r.mode) << "  measure " << r.spec.name() << "  state " << r.state_id << "\n";
  if (r.vacuous) {
    std::cout << "verdict: vacuous (" << r.vacuous_reason << ")\n";
    return;
  }
  std::cout << "parent " << format_partition(finest_partition(r.shape.size()), labels) << " = " << fmt(r.parent_value)
            << (r.parent_exact ? "" : " (upper bound)") << "\n";
  for (const auto& c : r.children)
    std::cout << "  " << std::left << std::setw(12) << format_partition(c.partition, labels) << " " << std::setw(14)
              << fmt(c.value) << " margin " << std::setw(14) << fmt(c.margin) << (c.exact ? "" : " roof")
              << (c.violated ? "  VIOLATED" : "") << "\n";
  for (const auto& e : r.equality_cases)
    std::cout << "  equality at " << format_partition(e.child, labels)
              << (e.evaluated ? (e.all_vanish ? ": Xi values vanish" : ": Xi values do not vanish") : ": Xi not evaluated")
              << "\n";
  for (const auto& c : r.conditions) {
    std::cout << "  " << c.name << ": " << c.lhs_label << " = " << fmt(c.lhs) << " vs " << c.rhs_label << " = "
              << fmt(c.rhs) << (c.triggered ? " triggered" : " not triggered");
    for (const auto& l : c.leftovers) std::cout << ", " << format_partition(l.partition, labels) << " = " << fmt(l.value);
    std::cout << (c.consistent ? "" : "  INCONSISTENT") << "\n";
  }
  for (const auto& p : r.power)
    std::cout << "  power[" << p.group << "] alpha* = " << (p.alpha_star ? fmt(*p.alpha_star) : "none")
              << (p.alpha_boundary ? ", boundary " + fmt(*p.alpha_boundary) : "") << "\n";
  std::cout << "verdict: " << (r.violated ? "violated" : "consistent")
            << (r.possibly_artifact ? " (possibly optimizer artifact)" : "") << "\n";
}

int cmd_measure(const StateFlags& st, SpecFlags& sf, RoofFlags& rf, const std::string& part, const Output& out,
                RunManifest man) {
  Clock clock;
  const AnyState state = st.load();
  const MeasureSpec spec = sf.build();
  const RoofConfig cfg = rf.build();
  const SystemShape& shape = shape_of(state);
  const Partition p = partition_or_finest(part, shape);
  const Evaluation e = evaluate_state(spec, state, p, cfg);
  man.spec = spec;
  man.roof = cfg;
  man.seed = cfg.seed;
  man.wall_time = clock.seconds();
  Json body;
  body["state"] = st.id();
  body["partition"] = format_partition(p, shape.labels());
  body["spec"] = to_json(spec);
  body["value"] = number(e.value);
  body["evaluation"] = to_json(e, shape.grouped(p).labels());
  if (out.pretty)
    std::cout << spec.name() << " on " << format_partition(p, shape.labels()) << " = " << fmt(e.value)
              << (e.exact ? "" : " (" + e.method + " upper bound)") << "\n";
  else
    emit(wrap_report(body, man, !out.no_timing));
  return kOk;
}

int cmd_gmc(const StateFlags& st, RoofFlags& rf, const Output& out, RunManifest man) {
  Clock clock;
  const AnyState state = st.load();
  const RoofConfig cfg = rf.build();
  const SystemShape& shape = shape_of(state);
  Json body;
  body["state"] = st.id();
  if (const auto* psi = std::get_if<PureState>(&state)) {
    const GmcResult g = gmc_with_cut(*psi);
    body["value"] = number(g.value);
    body["cut"] = format_partition(g.cut, shape.labels());
    body["exact"] = true;
    if (out.pretty) std::cout << "GMC = " << fmt(g.value) << " at " << format_partition(g.cut, shape.labels()) << "\n";
  } else {
    MeasureSpec spec;
    spec.family = Family::GMC;
    const Evaluation e = evaluate_state(spec, state, finest_partition(shape.size()), cfg);
    body["value"] = number(e.value);
    body["exact"] = false;
    body["evaluation"] = to_json(e, shape.labels());
    if (out.pretty) std::cout << "GMC <= " << fmt(e.value) << " (convex-roof upper bound)\n";
  }
  man.roof = cfg;
  man.seed = cfg.seed;
  man.wall_time = clock.seconds();
  if (!out.pretty) emit(wrap_report(body, man, !out.no_timing));
  return kOk;
}

int cmd_delta(const StateFlags& st, RoofFlags& rf, double tol, const Output& out, RunManifest man) {
  Clock clock;
  const AnyState state = st.load();
  const RoofConfig cfg = rf.build();
  const SystemShape& shape = shape_of(state);
  Json body;
  body["state"] = st.id();
  if (const auto* psi = std::get_if<PureState>(&state)) {
    const DeltaVerdict d = delta_pure(*psi, tol);
    body["delta"] = d.value;
    body["witness"] = d.witness ? Json(format_partition(*d.witness, shape.labels())) : Json(nullptr);
    body["max_offproduct"] = number(d.max_offproduct);
    if (out.pretty)
      std::cout << "delta = " << d.value
                << (d.witness ? " (product across " + format_partition(*d.witness, shape.labels()) + ")" : "") << "\n";
  } else {
    const BiseparabilityCertificate c = biseparability_certificate(std::get<DensityOperator>(state), cfg);
    body["delta"] = c.found ? 0 : 1;
    body["certificate"] = to_json(c, shape.labels());
    if (out.pretty)
      std::cout << (c.found ? "delta = 0 (biseparable decomposition found)"
                            : "delta = 1 (no biseparable decomposition found; residual " + fmt(c.residual) + ")")
                << "\n";
  }
  man.roof = cfg;
  man.seed = cfg.seed;
  man.wall_time = clock.seconds();
  if (!out.pretty) emit(wrap_report(body, man, !out.no_timing));
  return kOk;
}

int cmd_audit(const StateFlags& st, SpecFlags& sf, RoofFlags& rf, const std::string& mode, const std::string& grid,
              bool exhaustive, const Output& out, RunManifest man) {
  Clock clock;
  const AnyState state = st.load();
  AuditConfig cfg;
  cfg.roof = rf.build();
  cfg.alpha_grid = parse_alpha_grid(grid);
  cfg.exhaustive = exhaustive;
  const MeasureSpec spec = sf.build();
  const MonogamyReport r = run_audit(parse_audit_mode(mode), spec, state, cfg, st.id());
  man.spec = spec;
  man.roof = cfg.roof;
  man.seed = cfg.roof.seed;
  man.wall_time = clock.seconds();
  if (out.pretty)
    print_audit(r);
  else
    emit(wrap_report(to_json(r), man, !out.no_timing));
  return r.violated ? kViolation : kOk;
}

struct PartitionFlags {
  std::string labels;
  int parties = 0;
  std::string coarser_x, coarser_y;
  std::string relation = "any";
  bool no_inner = false;
  std::vector<std::string> xi;
  bool list = false;
  bool bipartitions = false;
};

int cmd_partitions(const PartitionFlags& f, const Output& out, RunManifest man) {
  std::vector<std::string> labels;
  if (!f.labels.empty()) {
    std::stringstream ss(f.labels);
    std::string item;
    while (std::getline(ss, item, ',')) labels.push_back(item);
  } else {
    labels = default_labels(f.parties > 0 ? static_cast<std::size_t>(f.parties) : 5);
  }
  const std::size_t m = labels.size();
  Json body;
  body["labels"] = labels;
  auto names = [&](const std::vector<Partition>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(format_partition(p, labels));
    return a;
  };
  bool any = false;
  if (f.list) {
    std::vector<int> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = static_cast<int>(i);
    body["partitions"] = names(all_partitions(all));
    any = true;
  }
  if (f.bipartitions) {
    body["bipartitions"] = names(all_bipartitions(m));
    any = true;
  }
  if (!f.coarser_x.empty()) {
    const Partition x = parse_partition(f.coarser_x, labels), y = parse_partition(f.coarser_y, labels);
    CoarsenMode mode;
    if (f.relation == "discard")
      mode = CoarsenMode::discard_only(!f.no_inner);
    else if (f.relation == "combine")
      mode = CoarsenMode::combine_only();
    else if (f.relation == "any")
      mode = CoarsenMode::any(!f.no_inner);
    else
      throw ParseError("--relation must be discard, combine or any");
    body["coarser"] = Json{{"x", format_partition(x, labels)},
                           {"y", format_partition(y, labels)},
                           {"relation", f.relation},
                           {"allow_inner_discard", !f.no_inner},
                           {"result", is_coarser(x, y, mode)}};
    any = true;
  }
  if (!f.xi.empty()) {
    const Partition x = parse_partition(f.xi.at(0), labels), y = parse_partition(f.xi.at(1), labels);
    body["xi"] = Json{{"x", format_partition(x, labels)},
                      {"y", format_partition(y, labels)},
                      {"allow_inner_discard", !f.no_inner},
                      {"members", names(xi_set(x, y, !f.no_inner))}};
    any = true;
  }
  if (!any) throw ParseError("partitions needs one of --list, --bipartitions, --coarser or --xi");
  if (out.pretty) {
    for (auto it = body.begin(); it != body.end(); ++it) std::cout << it.key() << ": " << it.value().dump() << "\n";
  } else {
    emit(wrap_report(body, man, false));
  }
  return kOk;
}

struct CampaignFlags {
  int qubits = 3;
  std::string dims;
  int samples = 100;
  std::string mode = "complete";
  std::string grid;
  std::string out_dir;
};

int cmd_campaign(const CampaignFlags& f, SpecFlags& sf, RoofFlags& rf, const Output& out, RunManifest man) {
  Clock clock;
  CampaignConfig cfg;
  cfg.spec = sf.build();
  cfg.mode = parse_audit_mode(f.mode);
  if (!f.dims.empty()) {
    std::vector<int> dims;
    std::stringstream ss(f.dims);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        dims.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ParseError("bad --dims entry '" + item + "'");
      }
    }
    cfg.shape = SystemShape(default_labels(dims.size()), dims);
  } else {
    cfg.shape = SystemShape::qubits(static_cast<std::size_t>(f.qubits));
  }
  cfg.samples = f.samples;
  cfg.audit.roof = rf.build();
  cfg.audit.alpha_grid = parse_alpha_grid(f.grid);
  cfg.seed = cfg.audit.roof.seed;
  cfg.threads = cfg.audit.roof.threads;
  cfg.audit.roof.threads = 1;

  namespace fs = std::filesystem;
  if (!f.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(f.out_dir, ec);
    const fs::path probe = fs::path(f.out_dir) / ".gmekit-write-test";
    std::ofstream test(probe);
    if (ec || !test) throw ParseError("output directory '" + f.out_dir + "' is not writable");
    test.close();
    fs::remove(probe, ec);
  }

  const CampaignResult res = campaign(cfg);
  man.spec = cfg.spec;
  man.roof = cfg.audit.roof;
  man.seed = cfg.seed;
  man.wall_time = clock.seconds();
  Json body = to_json(res);
  if (!f.out_dir.empty()) {
    const fs::path dir(f.out_dir);
    Json files = Json::array();
    auto dump_state = [&](const CampaignSample& s, const std::string& stem) {
      const fs::path p = dir / (stem + ".json");
      write_state_file(p.string(), s.state, stem + " (campaign seed " + std::to_string(cfg.seed) + ", sample " +
                                                std::to_string(s.index) + ")");
      files.push_back(p.filename().string());
    };
    if (res.worst) dump_state(*res.worst, "worst");
    for (const auto& s : res.violating) dump_state(s, "violation-" + std::to_string(s.index));
    body["fixtures"] = files;
    std::ofstream agg(dir / "campaign.json");
    agg << wrap_report(body, man, false).dump(2) << "\n";
    if (!agg) throw ParseError("cannot write campaign.json into '" + f.out_dir + "'");
  }
  if (out.pretty) {
    std::cout << "campaign " << f.mode << " " << cfg.spec.name() << " over " << res.samples << " samples: "
              << res.violations << " violations, " << res.vacuous << " vacuous, " << res.equality_occurrences
              << " equality cases\n";
  } else {
    emit(wrap_report(body, man, !out.no_timing));
  }
  return res.violations > 0 ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genuine multipartite entanglement measures and monogamy audits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  RunManifest man;
  man.arguments.assign(argv + 1, argv + argc);

  StateFlags st;
  SpecFlags sf;
  RoofFlags rf;
  Output out;
  std::string partition;

  auto* measure = app.add_subcommand("measure", "evaluate a measure on a state");
  st.attach(measure);
  sf.attach(measure);
  rf.attach(measure);
  out.attach(measure);
  measure->add_option("--partition", partition, "partition such as AB|C|D (default: every party separate)");

  auto* gmc = app.add_subcommand("gmc", "genuinely multipartite concurrence");
  st.attach(gmc);
  rf.attach(gmc);
  out.attach(gmc);

  double delta_tol = kDeltaTol;
  auto* delta = app.add_subcommand("delta", "biseparability gate");
  st.attach(delta);
  rf.attach(delta);
  out.attach(delta);
  delta->add_option("--delta-tol", delta_tol, "purity tolerance")->capture_default_str();

  std::string mode = "complete", grid;
  bool exhaustive = false;
  auto* audit = app.add_subcommand("audit", "monogamy audit of a state");
  st.attach(audit);
  sf.attach(audit);
  rf.attach(audit);
  out.attach(audit);
  audit->add_option("--mode", mode, "complete, tight or disentangling")->capture_default_str();
  audit->add_option("--alpha-grid", grid, "comma list or log:LO:HI:N (default log:0.25:8:64)");
  audit->add_flag("--exhaustive", exhaustive, "evaluate every equality case even after a violation");

  PartitionFlags pf;
  auto* parts = app.add_subcommand("partitions", "partition enumeration and coarsening queries");
  parts->add_option("--labels", pf.labels, "comma-separated labels (default A..E)");
  parts->add_option("--parties", pf.parties, "number of parties with default labels");
  parts->add_flag("--list", pf.list, "all partitions of the parties");
  parts->add_flag("--bipartitions", pf.bipartitions, "all bipartitions");
  parts->add_option("--coarser", pf.coarser_x, "is Y coarser than X: --coarser X --than Y");
  parts->add_option("--than", pf.coarser_y, "second partition for --coarser");
  parts->add_option("--relation", pf.relation, "discard, combine or any")->capture_default_str();
  parts->add_flag("--no-inner-discard", pf.no_inner, "only whole blocks may be discarded");
  parts->add_option("--xi", pf.xi, "Xi set: --xi X Y")->expected(2);
  out.attach(parts);

  CampaignFlags cf;
  auto* camp = app.add_subcommand("campaign", "audits over seeded Haar-random pure states");
  camp->add_option("--qubits", cf.qubits, "number of qubits")->capture_default_str();
  camp->add_option("--dims", cf.dims, "comma-separated local dimensions (overrides --qubits)");
  camp->add_option("-n,--samples", cf.samples, "number of samples")->capture_default_str();
  camp->add_option("--mode", cf.mode, "complete, tight or disentangling")->capture_default_str();
  camp->add_option("--alpha-grid", cf.grid, "comma list or log:LO:HI:N");
  camp->add_option("--out-dir", cf.out_dir, "directory for campaign.json and replay fixtures");
  sf.attach(camp);
  rf.attach(camp);
  out.attach(camp);

  std::string paper_state;
  auto* verify = app.add_subcommand("verify-paper", "check every number stated for the example states");
  verify->add_option("--state", paper_state, "replace the embedded four-qubit example state");
  out.attach(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (measure->parsed()) {
      man.command = "measure";
      man.inputs = {st.id()};
      return cmd_measure(st, sf, rf, partition, out, man);
    }
    if (gmc->parsed()) {
      man.command = "gmc";
      man.inputs = {st.id()};
      return cmd_gmc(st, rf, out, man);
    }
    if (delta->parsed()) {
      man.command = "delta";
      man.inputs = {st.id()};
      return cmd_delta(st, rf, delta_tol, out, man);
    }
    if (audit->parsed()) {
      man.command = "audit";
      man.inputs = {st.id()};
      return cmd_audit(st, sf, rf, mode, grid, exhaustive, out, man);
    }
    if (parts->parsed()) {
      man.command = "partitions";
      return cmd_partitions(pf, out, man);
    }
    if (camp->parsed()) {
      man.command = "campaign";
      return cmd_campaign(cf, sf, rf, out, man);
    }
    if (verify->parsed()) {
      std::optional<PureState> state;
      if (!paper_state.empty()) {
        AnyState s = read_state_file(paper_state);
        if (!std::holds_alternative<PureState>(s)) throw ParseError("--state must hold a pure state");
        state = std::get<PureState>(s);
      }
      const auto checks = run_paper_checks(state);
      bool ok = true;
      for (const auto& c : checks) ok = ok && c.pass;
      if (out.json) {
        man.command = "verify-paper";
        if (!paper_state.empty()) man.inputs = {paper_state};
        Json list = Json::array();
        for (const auto& c : checks)
          list.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"observed", c.observed}});
        emit(wrap_report(Json{{"checks", list}, {"all_pass", ok}}, man, !out.no_timing));
      } else {
        for (const auto& c : checks)
          std::cout << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(44) << c.name << " expected "
                    << c.expected << "  observed " << c.observed << "\n";
        std::cout << (ok ? "all checks pass" : "some checks FAILED") << "\n";
      }
      return ok ? kOk : kViolation;
    }
  } catch (const StateInvariantError& e) {
    std::cerr << "state invariant violated: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
