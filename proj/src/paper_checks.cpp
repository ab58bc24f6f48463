#include "gmekit/paper_checks.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "gmekit/errors.hpp"
#include "gmekit/fixtures.hpp"
#include "gmekit/genuine.hpp"
#include "gmekit/monogamy.hpp"

namespace gmekit {

namespace {

constexpr double kTol = 1e-9;

std::string num(double v) {
  std::ostringstream o;
  o.precision(12);
  o << v;
  return o.str();
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) s += (s.empty() ? "" : ", ") + i;
  return "{" + s + "}";
}

class Checks {
 public:
  void value(std::string name, double expected, double observed, double tol = kTol) {
    out_.push_back({std::move(name), std::abs(expected - observed) <= tol, num(expected), num(observed)});
  }
  void text(std::string name, const std::string& expected, const std::string& observed) {
    out_.push_back({std::move(name), expected == observed, expected, observed});
  }
  void flag(std::string name, bool pass, std::string expected, std::string observed) {
    out_.push_back({std::move(name), pass, std::move(expected), std::move(observed)});
  }
  std::vector<PaperCheck> take() { return std::move(out_); }

 private:
  std::vector<PaperCheck> out_;
};

void partition_checks(Checks& c) {
  const auto five = default_labels(5);
  const auto four = default_labels(4);
  auto p5 = [&](const char* t) { return parse_partition(t, five); };
  auto p4 = [&](const char* t) { return parse_partition(t, four); };
  const CoarsenMode a = CoarsenMode::discard_only(), b = CoarsenMode::combine_only();

  struct Link {
    const char* x;
    const char* y;
    CoarsenMode mode;
    const char* kind;
  };
  const Link chain[] = {{"A|B|C|D|E", "A|B|C|DE", b, "combine"},
                        {"A|B|C|DE", "A|B|C|D", a, "discard"},
                        {"A|B|C|D", "AB|C|D", b, "combine"},
                        {"AB|C|D", "AB|CD", b, "combine"},
                        {"A|B|C|DE", "A|B|DE", a, "discard"},
                        {"A|B|C|D", "AC|B|D", b, "combine"},
                        {"AC|B|D", "AC|BD", b, "combine"}};
  for (const auto& l : chain)
    c.flag(std::string(l.x) + " > " + l.y + " (" + l.kind + ")", is_coarser(p5(l.x), p5(l.y), l.mode), "true",
           is_coarser(p5(l.x), p5(l.y), l.mode) ? "true" : "false");

  const Partition x = p5("A|B|CD|E"), y = p5("A|B");
  std::set<std::string> computed;
  for (const auto& p : xi_set(x, y)) computed.insert(format_partition(p, five));
  std::vector<std::string> missing, extra;
  const auto listed = listed_xi_example();
  for (const auto& s : listed)
    if (!computed.contains(s)) missing.push_back(s);
  for (const auto& s : computed)
    if (std::find(listed.begin(), listed.end(), s) == listed.end()) extra.push_back(s);
  c.flag("Xi(A|B|CD|E - A|B) contains the listed elements", missing.empty(), join(listed),
         missing.empty() ? std::to_string(computed.size()) + " elements" : "missing " + join(missing));
  const bool delta_ok = std::all_of(extra.begin(), extra.end(), [&](const std::string& s) { return computed.contains(s); }) &&
                        computed.contains("C|E") && computed.contains("D|E") && computed.contains("B|CD");
  c.flag("Xi elements beyond the listed ones", delta_ok, "includes C|E, D|E, B|CD", join(extra));

  std::vector<std::string> bip;
  for (const auto& p : all_bipartitions(4)) bip.push_back(format_partition(p, four));
  c.text("bipartitions of ABCD", "{ACD|B, ABD|C, AD|BC, ABC|D, AC|BD, AB|CD, A|BCD}", join(bip));
  std::vector<std::string> tri;
  for (const auto& p : four_party_tripartitions()) tri.push_back(format_partition(p, four));
  c.flag("tripartitions of ABCD", tri.size() == 6 && std::set<std::string>(tri.begin(), tri.end()).size() == 6 &&
                                      std::all_of(tri.begin(), tri.end(), [&](const std::string& s) {
                                        const Partition p = p4(s.c_str());
                                        return p.size() == 3 && p.covers(4);
                                      }),
         "6 distinct three-block partitions", join(tri));
}

}  // namespace

std::vector<std::string> listed_xi_example() {
  return {"CD|E", "A|CD|E", "B|CD|E", "A|CD", "A|E", "B|E", "A|C", "A|D", "B|C", "B|D"};
}

std::vector<PaperCheck> run_paper_checks(const std::optional<PureState>& state) {
  Checks c;
  const PureState psi = state ? *state : fixture("paper");
  if (psi.shape().size() != 4) throw InvalidShape("the example state has four parties");
  const auto labels = psi.shape().labels();
  auto cut = [&](const char* t) { return parse_partition(t, labels); };
  const double s15 = std::sqrt(15.0) / 8, s65 = std::sqrt(65.0) / 8;

  c.value("C(ABC|D) = sqrt(15)/8", s15, bipartite_value(Family::Concurrence, psi, cut("ABC|D")));
  c.value("C(AB|CD) = sqrt(65)/8", s65, bipartite_value(Family::Concurrence, psi, cut("AB|CD")));

  const Matrix d = partial_trace(psi, {3}).matrix();
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 15.0 / 16;
  expect(1, 1) = 1.0 / 16;
  c.value("rho_D = diag(15/16, 1/16)", 0.0, max_abs_diff(d, expect));

  const GmcResult g = gmc_with_cut(psi);
  c.value("GMC = sqrt(15)/8", s15, g.value);
  c.text("GMC minimizing cut", "ABC|D", format_partition(g.cut, labels));
  c.value("delta = 1", 1.0, delta_pure(psi).value);

  MeasureSpec spec;
  spec.family = Family::GMC;
  const MonogamyReport r = audit_tight(spec, psi);
  c.flag("GMC tight audit reports a violation", r.violated, "violated", r.violated ? "violated" : "consistent");
  const double worst = r.worst_margin.value_or(0.0);
  c.value("worst hierarchy margin = sqrt(15)/8 - sqrt(65)/8", s15 - s65, worst);
  std::string at;
  for (const auto& ch : r.children)
    if (ch.margin == worst) {
      at = format_partition(ch.partition, labels);
      break;
    }
  c.text("first violating child", "AB|CD", at);

  partition_checks(c);
  return c.take();
}

}  // namespace gmekit
