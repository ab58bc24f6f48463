#include "gmekit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gmekit/errors.hpp"

namespace gmekit {

namespace {

const std::map<std::string, Family, std::less<>>& family_names() {
  static const std::map<std::string, Family, std::less<>> names = {
      {"ef", Family::Ef},
      {"tau", Family::Tau},
      {"concurrence", Family::Concurrence},
      {"c", Family::Concurrence},
      {"negativity", Family::NegativityN},
      {"n", Family::NegativityN},
      {"tsallis", Family::TsallisT},
      {"t", Family::TsallisT},
      {"renyi", Family::RenyiR},
      {"r", Family::RenyiR},
      {"fid_f", Family::FidF},
      {"fid_sqrt", Family::FidSqrtF},
      {"fid_a", Family::FidAF},
      {"gmc", Family::GMC},
      {"sum1234_2", Family::Sum1234_2},
      {"sum1234_3", Family::Sum1234_3},
  };
  return names;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Ef: return "ef";
    case Family::Tau: return "tau";
    case Family::Concurrence: return "concurrence";
    case Family::NegativityN: return "negativity";
    case Family::TsallisT: return "tsallis";
    case Family::RenyiR: return "renyi";
    case Family::FidF: return "fid_f";
    case Family::FidSqrtF: return "fid_sqrt";
    case Family::FidAF: return "fid_a";
    case Family::GMC: return "gmc";
    case Family::Sum1234_2: return "sum1234_2";
    case Family::Sum1234_3: return "sum1234_3";
  }
  return "unknown";
}

std::string to_string(Variant v) { return v == Variant::Plain ? "plain" : "genuine"; }
std::string to_string(MixedStrategy s) { return s == MixedStrategy::ConvexRoof ? "convex_roof" : "direct"; }

Family parse_family(std::string_view name, bool* genuine) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  bool g = false;
  if (key.size() > 2 && key.ends_with("_g") && !family_names().contains(key)) {
    key.resize(key.size() - 2);
    g = true;
  }
  auto it = family_names().find(key);
  if (it == family_names().end()) throw ParseError("unknown measure family '" + std::string(name) + "'");
  if (genuine) *genuine = g;
  return it->second;
}

bool is_party_family(Family f) noexcept {
  return f != Family::GMC && f != Family::Sum1234_2 && f != Family::Sum1234_3;
}

bool is_complete_family(Family f) noexcept {
  return f == Family::Ef || f == Family::Tau || f == Family::Concurrence || f == Family::TsallisT || f == Family::Sum1234_2;
}

bool is_unified_only_family(Family f) noexcept {
  return f == Family::RenyiR || f == Family::NegativityN || f == Family::FidF || f == Family::FidSqrtF || f == Family::FidAF;
}

bool is_additive_family(Family f) noexcept {
  return f == Family::Ef || f == Family::Tau || f == Family::TsallisT || f == Family::RenyiR || f == Family::NegativityN;
}

void MeasureSpec::validate() const {
  params.validate();
  if (mixed == MixedStrategy::Direct && family != Family::NegativityN)
    throw InvalidArgument("the direct mixed-state strategy exists only for the negativity family");
  if (family == Family::Sum1234_2 || family == Family::Sum1234_3) {
    if (!is_party_family(inner)) throw InvalidArgument("split sums need a block-by-block inner family");
  }
  if (!(delta_tol > 0.0 && delta_tol < 1.0)) throw InvalidArgument("delta tolerance must lie in (0, 1)");
}

bool MeasureSpec::gated() const noexcept { return variant == Variant::Genuine || !is_party_family(family); }

std::string MeasureSpec::name() const {
  std::string n = to_string(family);
  if (family == Family::Sum1234_2 || family == Family::Sum1234_3) n += "[" + to_string(inner) + "]";
  if (variant == Variant::Genuine && is_party_family(family)) n += "_g";
  return n;
}

PartyKernel::PartyKernel(Family family, const EntropyParams& params, const SystemShape& shape, const Partition& partition)
    : family_(family), params_(params), partition_(partition) {
  if (!is_party_family(family)) throw InvalidArgument("PartyKernel needs a block-by-block family");
  if (!partition.covers(shape.size()))
    throw InvalidArgument("partition does not cover the " + std::to_string(shape.size()) + " subsystems of the state");
  params.validate();
  for (const auto& b : partition.blocks()) splits_.emplace_back(shape, b);
  ops_.resize(partition.size());
  work_.resize(static_cast<Eigen::Index>(shape.total_dim()));
}

void PartyKernel::marginal(std::size_t block, const Vector& psi) {
  splits_[block].reshape(psi, m_);
  rho_.noalias() = m_ * m_.adjoint();
}

void PartyKernel::apply_block(std::size_t block, const Matrix& op, Vector& v) {
  const auto& split = splits_[block];
  split.reshape(v, m_);
  r_.noalias() = op * m_;
  for (std::size_t a = 0; a < split.inner_dim(); ++a)
    for (std::size_t b = 0; b < split.outer_dim(); ++b)
      v(static_cast<Eigen::Index>(split.compose(a, b))) = r_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
}

double PartyKernel::operator()(const Vector& psi) {
  const auto k = static_cast<double>(splits_.size());
  double acc = 0.0;
  auto spectrum = [&]() -> Eigen::VectorXd {
    es_.compute(rho_, Eigen::EigenvaluesOnly);
    return floor_spectrum(es_.eigenvalues());
  };
  switch (family_) {
    case Family::Tau:
    case Family::Concurrence: {
      for (std::size_t b = 0; b < splits_.size(); ++b) {
        marginal(b, psi);
        acc += rho_.squaredNorm();
      }
      const double tau = std::max(k - acc, 0.0);
      return family_ == Family::Tau ? tau : std::sqrt(tau);
    }
    case Family::Ef:
      for (std::size_t b = 0; b < splits_.size(); ++b) {
        marginal(b, psi);
        acc += von_neumann_spectrum(spectrum(), params_.log_base);
      }
      return 0.5 * acc;
    case Family::TsallisT:
      for (std::size_t b = 0; b < splits_.size(); ++b) {
        marginal(b, psi);
        acc += tsallis_spectrum(spectrum(), params_.q);
      }
      return 0.5 * acc;
    case Family::RenyiR:
      // R_alpha of a tensor product is the sum of the factors' values
      for (std::size_t b = 0; b < splits_.size(); ++b) {
        marginal(b, psi);
        acc += renyi_spectrum(spectrum(), params_.alpha);
      }
      return 0.5 * acc;
    case Family::NegativityN:
      for (std::size_t b = 0; b < splits_.size(); ++b) {
        marginal(b, psi);
        const double tr_sqrt = spectrum().cwiseSqrt().sum();
        acc += tr_sqrt * tr_sqrt;
      }
      return std::max(acc - k, 0.0);
    case Family::FidF:
    case Family::FidSqrtF:
    case Family::FidAF: {
      // rank-one first argument: F = <psi|sigma|psi>, F_A = <psi|sqrt(sigma)|psi>^2
      for (std::size_t b = 0; b < splits_.size(); ++b) {
        marginal(b, psi);
        if (family_ == Family::FidAF) {
          es_.compute(rho_);
          ops_[b] = es_.eigenvectors() * floor_spectrum(es_.eigenvalues()).cwiseSqrt().asDiagonal() *
                    es_.eigenvectors().adjoint();
        } else {
          ops_[b] = rho_;
        }
      }
      work_ = psi;
      for (std::size_t b = 0; b < splits_.size(); ++b) apply_block(b, ops_[b], work_);
      const double overlap = std::clamp(psi.dot(work_).real(), 0.0, 1.0);
      if (family_ == Family::FidF) return 1.0 - overlap;
      if (family_ == Family::FidSqrtF) return 1.0 - std::sqrt(overlap);
      return 1.0 - overlap * overlap;
    }
    default:
      break;
  }
  throw InvalidArgument("PartyKernel: unsupported family");
}

CutPurity::CutPurity(const SystemShape& shape, std::vector<int> side) : split_(shape, std::move(side)) {
  transpose_ = split_.inner_dim() > split_.outer_dim();
}

double CutPurity::operator()(const Vector& psi) {
  split_.reshape(psi, m_);
  if (transpose_)
    rho_.noalias() = m_.adjoint() * m_;
  else
    rho_.noalias() = m_ * m_.adjoint();
  return rho_.squaredNorm();
}

double evaluate_pure(const MeasureSpec& spec, const PureState& psi, const Partition& partition) {
  spec.validate();
  if (!is_party_family(spec.family)) throw InvalidArgument("evaluate_pure: " + to_string(spec.family) + " is delta-gated");
  if (spec.variant != Variant::Plain) throw InvalidArgument("evaluate_pure computes the plain variant");
  PartyKernel kernel(spec.family, spec.params, psi.shape(), partition);
  return kernel(psi.amplitudes());
}

double bipartite_value(Family family, const PureState& psi, const Partition& bipartition, const EntropyParams& params) {
  if (bipartition.size() != 2 || !bipartition.covers(psi.parties()))
    throw InvalidArgument("bipartite_value needs a covering two-block partition");
  if (family == Family::Concurrence) {
    CutPurity purity(psi.shape(), bipartition.block(0));
    return std::sqrt(std::max(2.0 * (1.0 - purity(psi.amplitudes())), 0.0));
  }
  PartyKernel kernel(family, params, psi.shape(), bipartition);
  return kernel(psi.amplitudes());
}

double negativity_mixed(const DensityOperator& rho) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rho.parties(); ++i) acc += trace_norm(partial_transpose(rho, {static_cast<int>(i)}));
  return std::max(acc - static_cast<double>(rho.parties()), 0.0);
}

double unification_check(const MeasureSpec& spec, const PureState& left, const PureState& right) {
  const PureState whole = tensor(left, right);
  auto value = [&](const PureState& s) { return evaluate_pure(spec, s, finest_partition(s.parties())); };
  return std::abs(value(whole) - value(left) - value(right));
}

}  // namespace gmekit
