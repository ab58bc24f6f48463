#include <doctest.h>

#include <cmath>

#include "gmekit/errors.hpp"
#include "gmekit/fixtures.hpp"
#include "gmekit/genuine.hpp"
#include "oracles.hpp"

using namespace gmekit;

namespace {

MeasureSpec spec_of(Family f, Variant v = Variant::Plain) {
  MeasureSpec s;
  s.family = f;
  s.variant = v;
  return s;
}

double oracle_gmc(const PureState& psi) {
  const Matrix full = psi.amplitudes() * psi.amplitudes().adjoint();
  double best = 1e300;
  const int m = static_cast<int>(psi.parties());
  for (int mask = 1; mask < (1 << (m - 1)); ++mask) {
    std::vector<int> side;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) side.push_back(i);
    best = std::min(best, std::sqrt(std::max(0.0, 2 * (1 - oracle::purity(oracle::partial_trace(full, psi.shape().dims(), side))))));
  }
  return best;
}

}  // namespace

TEST_CASE("delta gate") {
  CHECK(delta_pure(ghz(3)).value == 1);
  CHECK(delta_pure(w_state(3)).value == 1);
  const DeltaVerdict d = delta_pure(fixture("phi+0"));
  CHECK(d.value == 0);
  REQUIRE(d.witness);
  CHECK(*d.witness == Partition({{0, 1}, {2}}));
  CHECK(delta_pure(basis_state(SystemShape::qubits(3), {0, 1, 0})).value == 0);
  CHECK(delta_pure(fixture("paper")).value == 1);
  CHECK_THROWS_AS(delta_pure(random_pure(SystemShape::qubits(1), 1)), InvalidShape);
}

TEST_CASE("GMC is the minimum over bipartitions") {
  CHECK(std::abs(gmc_pure(ghz(3)) - 1.0) < 1e-12);
  CHECK(std::abs(gmc_pure(w_state(3)) - std::sqrt(8.0 / 9.0)) < 1e-12);
  CHECK(gmc_pure(fixture("phi+0")) == 0.0);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PureState psi = random_pure(seed % 2 ? SystemShape::qubits(4) : SystemShape({"A", "B", "C"}, {2, 3, 2}), seed);
    const GmcResult g = gmc_with_cut(psi);
    CHECK(std::abs(g.value - oracle_gmc(psi)) < 1e-12);
    CHECK(std::abs(bipartite_value(Family::Concurrence, psi, g.cut) - g.value) < 1e-12);
    for (const auto& b : all_bipartitions(psi.parties())) CHECK(g.value <= bipartite_value(Family::Concurrence, psi, b) + 1e-15);
  }
  const GmcResult paper = gmc_with_cut(fixture("paper"));
  CHECK(std::abs(paper.value - std::sqrt(15.0) / 8) < 1e-12);
  CHECK(paper.cut == Partition({{0, 1, 2}, {3}}));
}

TEST_CASE("genuine variants") {
  const PureState w = w_state(3), phi0 = fixture("phi+0");
  const Partition f = finest_partition(3);
  CHECK(std::abs(evaluate(spec_of(Family::Tau, Variant::Genuine), w, f) - 4.0 / 3.0) < 1e-9);
  CHECK(evaluate(spec_of(Family::Tau, Variant::Genuine), phi0, f) == 0.0);
  CHECK(evaluate(spec_of(Family::Tau), phi0, f) > 0.5);
  // gated over the grouped parties: AB|C is a product for phi+0
  CHECK(evaluate(spec_of(Family::Ef, Variant::Genuine), phi0, Partition({{0, 1}, {2}})) == 0.0);
  CHECK(evaluate(spec_of(Family::Ef, Variant::Genuine), phi0, Partition({{0}, {1, 2}})) > 0.5);
}

TEST_CASE("split sums") {
  const PureState g4 = ghz(4);
  CHECK(std::abs(sum_1234_2(Family::Concurrence, g4) - 7.0) < 1e-12);
  CHECK(std::abs(sum_over_bipartitions(Family::Tau, ghz(3)) - 3.0) < 1e-12);
  CHECK(four_party_tripartitions().size() == 6);
  const PureState prod = tensor(ghz(2), PureState(SystemShape({"C", "D"}, {2, 2}), ghz(2).amplitudes()));
  CHECK(sum_1234_2(Family::Concurrence, prod) == 0.0);
  CHECK(sum_1234_3(Family::Concurrence, prod) == 0.0);
  CHECK(sum_1234_3(Family::Concurrence, g4) > 0.0);
  CHECK_THROWS_AS(sum_1234_2(Family::Concurrence, ghz(3)), InvalidArgument);
  MeasureSpec nested = spec_of(Family::Sum1234_2);
  nested.inner = Family::Sum1234_3;
  CHECK_THROWS_AS(nested.validate(), InvalidArgument);
}

TEST_CASE("pure functionals match evaluate") {
  const SystemShape s = SystemShape::qubits(3);
  for (Family fam : {Family::Tau, Family::Ef, Family::GMC, Family::NegativityN}) {
    for (Variant v : {Variant::Plain, Variant::Genuine}) {
      if (fam == Family::GMC && v == Variant::Genuine) continue;
      const MeasureSpec sp = spec_of(fam, v);
      auto f = make_pure_functional(sp, s);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const PureState psi = random_pure(s, seed);
        CHECK(std::abs(f(psi.amplitudes()) - evaluate(sp, psi, finest_partition(3))) < 1e-12);
      }
      CHECK(std::abs(f(fixture("phi+0").amplitudes()) - evaluate(sp, fixture("phi+0"), finest_partition(3))) < 1e-12);
    }
  }
  auto sq = make_squared_gmc_functional(s);
  const PureState psi = random_pure(s, 3);
  CHECK(std::abs(sq(psi.amplitudes()) - gmc_pure(psi) * gmc_pure(psi)) < 1e-12);
  CHECK(compose_blocks(Partition({{0, 2}, {1}}), Partition({{0}, {1, 3}, {2}})) == Partition({{0, 2}, {1, 3}}));
}

TEST_CASE("combining blocks never increases genuine complete families on genuinely entangled states") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = random_pure(SystemShape::qubits(4), seed);
    REQUIRE(delta_pure(psi).value == 1);
    for (Family f : {Family::Ef, Family::Tau, Family::Concurrence, Family::TsallisT}) {
      const MeasureSpec sp = spec_of(f, Variant::Genuine);
      const double fine = evaluate(sp, psi, finest_partition(4));
      for (const auto& c : coarsenings(finest_partition(4), CoarsenMode::combine_only(), 2))
        CHECK(evaluate(sp, psi, c) <= fine + 1e-9);
    }
  }
}
