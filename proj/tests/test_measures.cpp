#include <doctest.h>

#include <cmath>

#include "gmekit/errors.hpp"
#include "gmekit/fixtures.hpp"
#include "gmekit/genuine.hpp"
#include "gmekit/measures.hpp"
#include "gmekit/spectral.hpp"
#include "oracles.hpp"

using namespace gmekit;

namespace {

MeasureSpec spec_of(Family f, Variant v = Variant::Plain) {
  MeasureSpec s;
  s.family = f;
  s.variant = v;
  return s;
}

const Family kPartyFamilies[] = {Family::Ef,     Family::Tau,  Family::Concurrence, Family::NegativityN, Family::TsallisT,
                                 Family::RenyiR, Family::FidF, Family::FidSqrtF,    Family::FidAF};

}  // namespace

TEST_CASE("spectral functions") {
  const Matrix half = Matrix::Identity(2, 2) / 2.0;
  CHECK(von_neumann(half) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(von_neumann(half, LogBase::E) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(tsallis(half, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(renyi(half, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(trace_norm(Matrix::Identity(3, 3) * -1.0) == doctest::Approx(3.0));
  const Matrix s = matrix_sqrt(half);
  CHECK(max_abs_diff(s * s, half) < 1e-15);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = -0.1;
  CHECK_THROWS_AS(clamped_spectrum(bad), StateInvariantError);
  EntropyParams p;
  p.q = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.q = 2.0;
  p.alpha = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("fidelity symmetry and self-fidelity") {
  const SystemShape s = SystemShape::qubits(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix a = random_density(s, 1 + static_cast<int>(seed % 4), seed).matrix();
    const Matrix b = random_density(s, 1 + static_cast<int>((seed + 1) % 4), seed + 100).matrix();
    CHECK(std::abs(fidelity_uhlmann(a, b) - fidelity_uhlmann(b, a)) < 1e-9);
    CHECK(std::abs(fidelity_affinity(a, b) - fidelity_affinity(b, a)) < 1e-9);
    CHECK(std::abs(fidelity_sqrt(a, b) - std::sqrt(fidelity_uhlmann(a, b))) < 1e-12);
    CHECK(std::abs(fidelity_uhlmann(a, a) - 1.0) < 1e-9);
    CHECK(std::abs(fidelity_affinity(a, a) - 1.0) < 1e-9);
  }
  // pure first argument: F(|v><v|, sigma) = <v|sigma|v>
  const PureState v = random_pure(s, 3);
  const Matrix sigma = random_density(s, 3, 4).matrix();
  const Matrix pv = v.amplitudes() * v.amplitudes().adjoint();
  CHECK(std::abs(fidelity_uhlmann(pv, sigma) - (v.amplitudes().adjoint() * sigma * v.amplitudes())(0).real()) < 1e-9);
}

TEST_CASE("family names and spec validation") {
  bool g = false;
  CHECK(parse_family("tau_g", &g) == Family::Tau);
  CHECK(g);
  CHECK(parse_family("c", &g) == Family::Concurrence);
  CHECK_FALSE(g);
  CHECK_THROWS_AS(parse_family("squashed"), ParseError);
  MeasureSpec s = spec_of(Family::Tau);
  s.mixed = MixedStrategy::Direct;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  CHECK(spec_of(Family::Tau, Variant::Genuine).name() == "tau_g");
  CHECK(spec_of(Family::GMC).gated());
}

TEST_CASE("analytic values on the fixtures") {
  const PureState g3 = ghz(3), w = w_state(3);
  const Partition f3 = finest_partition(3);
  CHECK(std::abs(evaluate_pure(spec_of(Family::Ef), g3, f3) - 1.5) < 1e-9);
  CHECK(std::abs(evaluate_pure(spec_of(Family::Tau), w, f3) - 4.0 / 3.0) < 1e-9);
  CHECK(std::abs(evaluate_pure(spec_of(Family::Concurrence), w, f3) - std::sqrt(4.0 / 3.0)) < 1e-9);
  CHECK(std::abs(evaluate_pure(spec_of(Family::NegativityN), g3, f3) - 3.0) < 1e-9);
  CHECK(std::abs(negativity_mixed(DensityOperator::from_pure(g3)) - 3.0) < 1e-9);
  CHECK(std::abs(evaluate_pure(spec_of(Family::FidF), g3, f3) - 7.0 / 8.0) < 1e-9);
  CHECK(std::abs(evaluate_pure(spec_of(Family::FidSqrtF), g3, f3) - (1.0 - std::sqrt(1.0 / 8.0))) < 1e-9);
  CHECK(std::abs(evaluate_pure(spec_of(Family::TsallisT), g3, f3) - 0.75) < 1e-9);
  MeasureSpec r = spec_of(Family::RenyiR);
  CHECK(std::abs(evaluate_pure(r, g3, f3) - 1.5 * std::log(2.0)) < 1e-9);
  const PureState phi0 = fixture("phi+0");
  CHECK(evaluate_pure(spec_of(Family::Ef), phi0, Partition({{0, 1}, {2}})) < 1e-12);
  CHECK_THROWS_AS(evaluate_pure(spec_of(Family::Tau), g3, Partition({{0}, {1}})), InvalidArgument);
  CHECK_THROWS_AS(evaluate_pure(spec_of(Family::GMC), g3, f3), InvalidArgument);
}

TEST_CASE("measures agree with oracle marginals on random states") {
  const SystemShape s({"A", "B", "C"}, {2, 3, 2});
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const PureState psi = random_pure(s, seed);
    const Matrix full = psi.amplitudes() * psi.amplitudes().adjoint();
    const Partition p({{0, 2}, {1}});
    const Matrix ra = oracle::partial_trace(full, s.dims(), {0, 2}), rb = oracle::partial_trace(full, s.dims(), {1});
    const double tau = 2.0 - oracle::purity(ra) - oracle::purity(rb);
    CHECK(std::abs(evaluate_pure(spec_of(Family::Tau), psi, p) - tau) < 1e-12);
    CHECK(std::abs(evaluate_pure(spec_of(Family::Ef), psi, p) - 0.5 * (oracle::entropy2(ra) + oracle::entropy2(rb))) < 1e-10);
    CHECK(std::abs(bipartite_value(Family::Concurrence, psi, p) - std::sqrt(2 * (1 - oracle::purity(ra)))) < 1e-12);

    const Partition f = finest_partition(3);
    const Matrix a = oracle::partial_trace(full, s.dims(), {0}), b = oracle::partial_trace(full, s.dims(), {1}),
                 c = oracle::partial_trace(full, s.dims(), {2});
    const Matrix prod = oracle::kron(oracle::kron(a, b), c);
    const double overlap = (psi.amplitudes().adjoint() * prod * psi.amplitudes())(0).real();
    CHECK(std::abs(evaluate_pure(spec_of(Family::FidF), psi, f) - (1 - overlap)) < 1e-12);
  }
}

TEST_CASE("local-unitary invariance") {
  const SystemShape s({"A", "B", "C"}, {2, 2, 3});
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const PureState psi = random_pure(s, rng);
    PureState moved = psi;
    for (int k = 0; k < 3; ++k) moved = apply_local(moved, k, random_unitary(s.dim(static_cast<std::size_t>(k)), rng));
    for (Family f : kPartyFamilies) {
      const double a = evaluate(spec_of(f), psi, finest_partition(3)), b = evaluate(spec_of(f), moved, finest_partition(3));
      CHECK(std::abs(a - b) < 1e-9);
    }
    CHECK(std::abs(gmc_pure(psi) - gmc_pure(moved)) < 1e-9);
  }
}

TEST_CASE("additivity on tensor products") {
  for (Family f : {Family::Ef, Family::Tau, Family::TsallisT, Family::RenyiR, Family::NegativityN}) {
    CHECK(is_additive_family(f));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const PureState l = random_pure(SystemShape::qubits(2), seed), r = random_pure(SystemShape({"C", "D", "E"}, {2, 3, 2}), seed + 50);
      CHECK(unification_check(spec_of(f), l, r) < 1e-9);
    }
  }
  // concurrence is the square root of an additive quantity and is not additive itself
  const PureState l = ghz(2), r(SystemShape({"C", "D"}, {2, 2}), ghz(2).amplitudes());
  CHECK(unification_check(spec_of(Family::Concurrence), l, r) > 0.1);
}

TEST_CASE("combining blocks never increases complete families") {
  const SystemShape s = SystemShape::qubits(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = random_pure(s, seed);
    for (Family f : {Family::Ef, Family::Tau, Family::Concurrence, Family::TsallisT}) {
      const double fine = evaluate_pure(spec_of(f), psi, finest_partition(4));
      for (const auto& c : coarsenings(finest_partition(4), CoarsenMode::combine_only(), 2))
        CHECK(evaluate_pure(spec_of(f), psi, c) <= fine + 1e-9);
    }
  }
}
