#include "gmekit/report.hpp"

#include <cmath>

namespace gmekit {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

namespace {

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

std::string label(const Partition& p, const std::vector<std::string>& labels) { return format_partition(p, labels); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

Json to_json(const MeasureSpec& spec) {
  Json j;
  j["family"] = to_string(spec.family);
  j["variant"] = to_string(spec.variant);
  j["name"] = spec.name();
  j["mixed_strategy"] = to_string(spec.mixed);
  if (spec.family == Family::Sum1234_2 || spec.family == Family::Sum1234_3) j["inner"] = to_string(spec.inner);
  j["q"] = spec.params.q;
  j["alpha"] = spec.params.alpha;
  j["log_base"] = spec.params.log_base == LogBase::Two ? "2" : "e";
  j["delta_tol"] = spec.delta_tol;
  return j;
}

Json to_json(const RoofConfig& cfg) {
  Json j;
  j["ensemble_size"] = cfg.ensemble_size;
  j["restarts"] = cfg.restarts;
  j["max_iters"] = cfg.max_iters;
  j["step_tol"] = cfg.step_tol;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  return j;
}

Json to_json(const RunManifest& m, bool with_wall_time) {
  Json j;
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  j["inputs"] = m.inputs;
  j["spec"] = m.spec ? to_json(*m.spec) : Json(nullptr);
  j["roof"] = m.roof ? to_json(*m.roof) : Json(nullptr);
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  j["tool_version"] = m.tool_version;
  if (with_wall_time) j["wall_time_s"] = m.wall_time;
  return j;
}

Json to_json(const Ensemble& e, const std::vector<std::string>& labels) {
  Json members = Json::array();
  for (std::size_t i = 0; i < e.size(); ++i) {
    Json amps = Json::array();
    const Vector& v = e.members[i].amplitudes();
    for (Eigen::Index k = 0; k < v.size(); ++k) amps.push_back(Json::array({v(k).real(), v(k).imag()}));
    members.push_back(Json{{"weight", e.weights[i]}, {"amplitudes", std::move(amps)}});
  }
  return Json{{"labels", labels}, {"members", std::move(members)}};
}

Json to_json(const RoofResult& r, const std::vector<std::string>& labels) {
  Json j;
  j["value"] = number(r.value);
  j["upper_bound"] = r.rank > 1;
  j["rank"] = r.rank;
  j["converged"] = r.converged;
  j["restarts_used"] = r.restarts_used;
  j["best_restart"] = r.best_restart;
  j["eigen_ensemble_value"] = number(r.eigen_value);
  j["member_values"] = numbers(r.member_values);
  j["ensemble"] = to_json(r.ensemble, labels);
  return j;
}

Json to_json(const BiseparabilityCertificate& c, const std::vector<std::string>& labels) {
  Json j;
  j["outcome"] = c.found ? "biseparable_found" : "undetected";
  j["residual"] = number(c.residual);
  j["numerical_certificate"] = true;
  if (c.found) j["ensemble"] = to_json(c.ensemble, labels);
  return j;
}

Json to_json(const Evaluation& e, const std::vector<std::string>& labels) {
  Json j;
  j["value"] = number(e.value);
  j["exact"] = e.exact;
  j["method"] = e.method;
  if (e.roof) j["roof"] = to_json(*e.roof, labels);
  if (e.certificate) j["certificate"] = to_json(*e.certificate, labels);
  return j;
}

Json to_json(const ChildValue& c, const std::vector<std::string>& labels) {
  Json j;
  j["partition"] = label(c.partition, labels);
  j["value"] = number(c.value);
  j["exact"] = c.exact;
  j["method"] = c.method;
  j["genuine"] = c.genuine;
  j["margin"] = number(c.margin);
  j["violated"] = c.violated;
  j["restarts"] = c.restarts;
  return j;
}

Json to_json(const MonogamyReport& r) {
  const auto& labels = r.shape.labels();
  Json j;
  j["state"] = r.state_id;
  j["mode"] = to_string(r.mode);
  j["spec"] = to_json(r.spec);
  j["labels"] = labels;
  j["dims"] = r.shape.dims();
  j["vacuous"] = r.vacuous;
  if (r.vacuous) j["vacuous_reason"] = r.vacuous_reason;
  j["verdict"] = r.vacuous ? "vacuous" : r.violated ? "violated" : "consistent";
  j["violated"] = r.violated;
  j["possibly_optimizer_artifact"] = r.possibly_artifact;
  j["parent"] = Json{{"partition", label(finest_partition(r.shape.size()), labels)},
                     {"value", number(r.parent_value)},
                     {"exact", r.parent_exact}};
  Json children = Json::array();
  for (const auto& c : r.children) children.push_back(to_json(c, labels));
  j["children"] = std::move(children);
  j["worst_margin"] = optional_number(r.worst_margin);
  if (!r.power.empty()) {
    j["alpha_grid"] = numbers(r.alpha_grid);
    Json power = Json::array();
    for (const auto& p : r.power) {
      Json parts = Json::array();
      for (const auto& c : p.children) parts.push_back(label(c, labels));
      power.push_back(Json{{"group", p.group},
                           {"strict", p.strict},
                           {"children", std::move(parts)},
                           {"residuals", numbers(p.residuals)},
                           {"alpha_star", optional_number(p.alpha_star)},
                           {"alpha_boundary", optional_number(p.alpha_boundary)},
                           {"sign_changes", p.sign_changes}});
    }
    j["power"] = std::move(power);
    j["alpha_star"] = optional_number(r.alpha_star);
  }
  if (r.mode == AuditMode::Tight) {
    Json eqs = Json::array();
    for (const auto& e : r.equality_cases) {
      Json xi = Json::array();
      for (const auto& v : e.xi_values) xi.push_back(to_json(v, labels));
      eqs.push_back(Json{{"child", label(e.child, labels)},
                         {"residual", number(e.residual)},
                         {"evaluated", e.evaluated},
                         {"all_vanish", e.all_vanish},
                         {"xi", std::move(xi)}});
    }
    j["equality_cases"] = std::move(eqs);
  }
  if (r.mode == AuditMode::Disentangling) {
    Json conds = Json::array();
    for (const auto& c : r.conditions) {
      Json left = Json::array();
      for (const auto& v : c.leftovers) left.push_back(to_json(v, labels));
      conds.push_back(Json{{"name", c.name},
                           {"lhs", c.lhs_label},
                           {"rhs", c.rhs_label},
                           {"lhs_value", number(c.lhs)},
                           {"rhs_value", number(c.rhs)},
                           {"triggered", c.triggered},
                           {"leftovers", std::move(left)},
                           {"consistent", c.consistent}});
    }
    j["conditions"] = std::move(conds);
  }
  j["notes"] = r.notes;
  return j;
}

Json to_json(const CampaignResult& r) {
  Json j;
  j["mode"] = to_string(r.config.mode);
  j["spec"] = to_json(r.config.spec);
  j["labels"] = r.config.shape.labels();
  j["dims"] = r.config.shape.dims();
  j["samples"] = r.samples;
  j["seed"] = r.config.seed;
  j["violations"] = r.violations;
  j["vacuous"] = r.vacuous;
  j["equality_occurrences"] = r.equality_occurrences;
  j["possibly_optimizer_artifact"] = r.artifact_flags;

  std::vector<double> found;
  int missing = 0;
  for (const auto& a : r.alpha_stars) {
    if (a)
      found.push_back(*a);
    else
      ++missing;
  }
  Json alpha;
  alpha["count"] = found.size();
  alpha["none_on_grid"] = missing;
  if (!found.empty()) {
    std::sort(found.begin(), found.end());
    double mean = 0.0;
    for (double a : found) mean += a;
    alpha["min"] = found.front();
    alpha["max"] = found.back();
    alpha["mean"] = mean / static_cast<double>(found.size());
    alpha["median"] = found[found.size() / 2];
  }
  Json hist = Json::object();
  for (double a : found) {
    char key[32];
    std::snprintf(key, sizeof key, "%.6g", a);
    hist[key] = hist.value(key, 0) + 1;
  }
  alpha["histogram"] = std::move(hist);
  j["alpha_star"] = std::move(alpha);

  if (r.worst)
    j["worst"] = Json{{"index", r.worst->index},
                      {"seed", r.worst->seed},
                      {"worst_margin", optional_number(r.worst->report.worst_margin)},
                      {"report", to_json(r.worst->report)}};
  else
    j["worst"] = nullptr;
  Json viol = Json::array();
  for (const auto& s : r.violating)
    viol.push_back(Json{{"index", s.index}, {"seed", s.seed}, {"worst_margin", optional_number(s.report.worst_margin)}});
  j["violating"] = std::move(viol);
  return j;
}

Json wrap_report(const Json& body, const RunManifest& manifest, bool with_wall_time) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["manifest"] = to_json(manifest, with_wall_time);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

}  // namespace gmekit
