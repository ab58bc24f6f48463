#include "gmekit/genuine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gmekit/errors.hpp"

namespace gmekit {

Partition compose_blocks(const Partition& outer, const Partition& base) {
  std::vector<Block> blocks;
  for (const auto& ob : outer.blocks()) {
    Block merged;
    for (int i : ob) {
      const auto& b = base.block(static_cast<std::size_t>(i));
      merged.insert(merged.end(), b.begin(), b.end());
    }
    blocks.push_back(std::move(merged));
  }
  return Partition(std::move(blocks));
}

std::vector<Partition> four_party_tripartitions() {
  return {
      Partition({{0}, {1}, {2, 3}}), Partition({{0}, {1, 2}, {3}}), Partition({{0, 2}, {1}, {3}}),
      Partition({{0, 1}, {2}, {3}}), Partition({{0, 3}, {1}, {2}}), Partition({{0}, {1, 3}, {2}}),
  };
}

namespace {

// Purities of every cut of the block-level view.
class CutSet {
 public:
  CutSet(const SystemShape& shape, const Partition& partition) {
    if (partition.size() < 2) throw InvalidShape("the delta gate needs at least two parties");
    for (const auto& bp : all_bipartitions(partition.size())) {
      Partition cut = compose_blocks(bp, partition);
      purities_.emplace_back(shape, cut.block(0));
      cuts_.push_back(std::move(cut));
    }
  }

  std::size_t size() const noexcept { return cuts_.size(); }
  const Partition& cut(std::size_t i) const { return cuts_[i]; }
  double purity(std::size_t i, const Vector& psi) { return purities_[i](psi); }

  bool product(const Vector& psi, double tol) {
    for (auto& p : purities_)
      if (p(psi) >= 1.0 - tol) return true;
    return false;
  }

 private:
  std::vector<Partition> cuts_;
  std::vector<CutPurity> purities_;
};

struct Functional {
  MeasureSpec spec;
  std::optional<CutSet> cuts;
  std::optional<PartyKernel> party;
  std::vector<PartyKernel> splits;

  bool gate = true;

  Functional(const MeasureSpec& s, const SystemShape& shape, const Partition& partition, bool gated = true)
      : spec(s), gate(gated) {
    spec.validate();
    if (!partition.covers(shape.size())) throw InvalidArgument("partition does not cover the state's subsystems");
    if (spec.gated()) cuts.emplace(shape, partition);
    switch (spec.family) {
      case Family::GMC:
        break;
      case Family::Sum1234_2:
        for (const auto& bp : all_bipartitions(partition.size()))
          splits.emplace_back(spec.inner, spec.params, shape, compose_blocks(bp, partition));
        break;
      case Family::Sum1234_3:
        if (partition.size() != 4) throw InvalidArgument("sum1234_3 is defined for four parties");
        for (const auto& tp : four_party_tripartitions())
          splits.emplace_back(spec.inner, spec.params, shape, compose_blocks(tp, partition));
        break;
      default:
        party.emplace(spec.family, spec.params, shape, partition);
    }
  }

  double operator()(const Vector& psi) {
    if (spec.family == Family::GMC) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < cuts->size(); ++i) {
        const double p = cuts->purity(i, psi);
        if (gate && p >= 1.0 - spec.delta_tol) return 0.0;
        best = std::min(best, 2.0 * (1.0 - p));
      }
      return std::sqrt(std::max(best, 0.0));
    }
    if (gate && cuts && cuts->product(psi, spec.delta_tol)) return 0.0;
    if (party) return (*party)(psi);
    double acc = 0.0;
    for (auto& k : splits) acc += k(psi);
    return acc;
  }
};

}  // namespace

DeltaVerdict delta_pure(const PureState& psi, double tol) {
  if (psi.parties() < 2) throw InvalidShape("delta needs at least two parties");
  DeltaVerdict v;
  v.max_offproduct = std::numeric_limits<double>::infinity();
  for (const auto& cut : all_bipartitions(psi.parties())) {
    CutPurity purity(psi.shape(), cut.block(0));
    const double p = purity(psi.amplitudes());
    v.max_offproduct = std::min(v.max_offproduct, std::max(1.0 - p, 0.0));
    if (!v.witness && p >= 1.0 - tol) {
      v.value = 0;
      v.witness = cut;
    }
  }
  return v;
}

GmcResult gmc_with_cut(const PureState& psi) {
  if (psi.parties() < 2) throw InvalidShape("GMC needs at least two parties");
  GmcResult best{std::numeric_limits<double>::infinity(), {}};
  for (const auto& cut : all_bipartitions(psi.parties())) {
    const double c = bipartite_value(Family::Concurrence, psi, cut);
    if (c < best.value) best = {c, cut};
  }
  if (delta_pure(psi).value == 0) best.value = 0.0;
  return best;
}

double gmc_pure(const PureState& psi) { return gmc_with_cut(psi).value; }

double evaluate(const MeasureSpec& spec, const PureState& psi, const Partition& partition) {
  Functional f(spec, psi.shape(), partition);
  return f(psi.amplitudes());
}

double evaluate_genuine_pure(const MeasureSpec& spec, const PureState& psi, const Partition& partition) {
  MeasureSpec g = spec;
  g.variant = Variant::Genuine;
  return evaluate(g, psi, partition);
}

double sum_over_bipartitions(Family inner, const PureState& psi, const EntropyParams& params) {
  MeasureSpec spec;
  spec.family = Family::Sum1234_2;
  spec.inner = inner;
  spec.params = params;
  return evaluate(spec, psi, finest_partition(psi.parties()));
}

double sum_1234_2(Family inner, const PureState& psi, const EntropyParams& params) {
  if (psi.parties() != 4) throw InvalidArgument("sum_1234_2 needs exactly four parties");
  return sum_over_bipartitions(inner, psi, params);
}

double sum_1234_3(Family inner, const PureState& psi, const EntropyParams& params) {
  if (psi.parties() != 4) throw InvalidArgument("sum_1234_3 needs exactly four parties");
  MeasureSpec spec;
  spec.family = Family::Sum1234_3;
  spec.inner = inner;
  spec.params = params;
  return evaluate(spec, psi, finest_partition(4));
}

PureFunctional make_pure_functional(const MeasureSpec& spec, const SystemShape& shape, const Partition& partition) {
  return Functional(spec, shape, partition);
}

PureFunctional make_pure_functional(const MeasureSpec& spec, const SystemShape& shape) {
  return make_pure_functional(spec, shape, finest_partition(shape.size()));
}

PureFunctional make_ungated_functional(const MeasureSpec& spec, const SystemShape& shape) {
  return Functional(spec, shape, finest_partition(shape.size()), false);
}

PureFunctional make_squared_gmc_functional(const SystemShape& shape) {
  return [cuts = CutSet(shape, finest_partition(shape.size()))](const Vector& psi) mutable {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cuts.size(); ++i) best = std::min(best, 2.0 * (1.0 - cuts.purity(i, psi)));
    return std::max(best, 0.0);
  };
}

}  // namespace gmekit
