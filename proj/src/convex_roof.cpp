#include "gmekit/convex_roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "gmekit/errors.hpp"

namespace gmekit {

namespace {

constexpr double kRankTol = 1e-12;
constexpr double kEmptyMember = 1e-300;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Spectrum {
  Eigen::VectorXd weights;  // kept eigenvalues
  Matrix vectors;           // D x r, matching columns
};

Spectrum support_spectrum(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;)
    if (es.eigenvalues()(i) > kRankTol) keep.push_back(i);
  if (keep.empty()) throw Error("convex roof: state has no support above the rank tolerance");
  Spectrum s;
  s.weights.resize(static_cast<Eigen::Index>(keep.size()));
  s.vectors.resize(rho.matrix().rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    s.weights(static_cast<Eigen::Index>(k)) = es.eigenvalues()(keep[k]);
    s.vectors.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  }
  return s;
}

struct StartOutcome {
  double value = std::numeric_limits<double>::infinity();
  Matrix members;  // D x n, unnormalized members as columns
  bool converged = false;
  double initial = 0.0;
};

double inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace().real(); }

// Tangent projection at V for the embedded metric: X - V herm(V^H X).
Matrix project(const Matrix& v, const Matrix& x) {
  const Matrix vx = v.adjoint() * x;
  return x - v * (0.5 * (vx + vx.adjoint()));
}

// Polar retraction of V + t D back onto the isometries.
Matrix retract(const Matrix& v, const Matrix& d, double t) {
  const Matrix y = v + t * d;
  Eigen::SelfAdjointEigenSolver<Matrix> es(y.adjoint() * y);
  const Eigen::VectorXd s = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return y * (es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint());
}

// sum_i p_i E(psi_i) as a function of the isometry V (n x r), with member i
// built from row i of V: psi~_i = sum_j V_ij sqrt(l_j) e_j.
class RoofObjective {
 public:
  RoofObjective(PureFunctional f, const Matrix& scaled) : f_(std::move(f)), a_(scaled) {}

  void set_smoothing(double eps) { eps_ = eps; }
  Matrix members(const Matrix& v) const { return a_ * v.transpose(); }

  double value(const Matrix& v) {
    m_.noalias() = a_ * v.transpose();
    double s = 0.0;
    for (Eigen::Index i = 0; i < m_.cols(); ++i) s += member(m_.col(i));
    return s;
  }

  // Central differences per member; only row i of V moves member i.
  double value_and_gradient(const Matrix& v, Matrix& g) {
    constexpr double h = 1e-6;
    m_.noalias() = a_ * v.transpose();
    g.resize(v.rows(), v.cols());
    double s = 0.0;
    for (Eigen::Index i = 0; i < m_.cols(); ++i) {
      x_ = m_.col(i);
      s += member(x_);
      for (Eigen::Index j = 0; j < a_.cols(); ++j) {
        const double re = (member(x_ + h * a_.col(j)) - member(x_ - h * a_.col(j))) / (2 * h);
        const Complex ih(0.0, h);
        const double im = (member(x_ + ih * a_.col(j)) - member(x_ - ih * a_.col(j))) / (2 * h);
        g(i, j) = Complex(re, im);
      }
    }
    return s;
  }

 private:
  double member(const Vector& x) {
    const double p = x.squaredNorm();
    if (p < kEmptyMember) return 0.0;
    unit_ = x / std::sqrt(p);
    const double e = f_(unit_);
    if (eps_ > 0.0) return p * (std::sqrt(e * e + eps_ * eps_) - eps_);
    return p * e;
  }

  PureFunctional f_;
  Matrix a_;
  Matrix m_;
  Vector x_, unit_;
  double eps_ = 0.0;
};

// Smoothing levels for the member values during descent; the last stage
// leaves at most ~1e-6 of slack, and the result is rescored exactly.
constexpr double kSmoothing[] = {1e-2, 1e-3, 1e-4, 1e-6};

// Riemannian conjugate gradient (Polak-Ribiere+, Armijo backtracking).
bool conjugate_gradient(RoofObjective& obj, Matrix& v, int& budget, double step_tol) {
  Matrix g, r, dir, vn, gn;
  double f = obj.value_and_gradient(v, g);
  r = project(v, g);
  dir = -r;
  const double norm = std::sqrt(inner(dir, dir));
  if (norm < 1e-14) return true;
  double t = 0.1 / norm;
  while (budget > 0) {
    --budget;
    double slope = inner(r, dir);
    if (slope >= 0.0) {
      dir = -r;
      slope = -inner(r, r);
    }
    if (-slope < 1e-24) return true;
    double fn = f;
    bool accepted = false;
    for (int k = 0; k < 50; ++k, t *= 0.5) {
      vn = retract(v, dir, t);
      fn = obj.value(vn);
      if (fn <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) return true;
    const double gain = f - fn;
    obj.value_and_gradient(vn, gn);
    const Matrix rn = project(vn, gn);
    const double beta = std::max(0.0, inner(rn, rn - project(vn, r)) / inner(r, r));
    dir = -rn + beta * project(vn, dir);
    v = vn;
    f = fn;
    r = rn;
    t *= 2.0;
    if (gain < step_tol) return true;
  }
  return false;
}

StartOutcome descend(const PureFunctional& search, const PureFunctional& score, const Matrix& scaled, Matrix v,
                     const RoofConfig& cfg) {
  RoofObjective exact(score, scaled);
  StartOutcome out;
  out.initial = exact.value(v);
  const Matrix v0 = v;
  RoofObjective obj(search, scaled);
  int budget = cfg.max_iters;
  bool converged = false;
  for (double eps : kSmoothing) {
    obj.set_smoothing(eps);
    converged = conjugate_gradient(obj, v, budget, cfg.step_tol);
  }
  out.converged = converged;
  out.value = exact.value(v);
  if (out.value <= out.initial) {
    out.members = exact.members(v);
  } else {
    out.value = out.initial;
    out.members = exact.members(v0);
  }
  return out;
}

Matrix initial_isometry(int n, int r, int start, std::uint64_t seed) {
  if (start == 0) return Matrix::Identity(n, r);
  Rng rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(start))));
  return random_unitary(n, rng).leftCols(r);
}

RoofResult finish(const PureFunctional& measure, const SystemShape& shape, const StartOutcome& best, int best_index,
                  int starts, int rank, double eigen_value) {
  RoofResult res;
  res.rank = rank;
  res.restarts_used = starts;
  res.best_restart = best_index;
  res.converged = best.converged;
  res.eigen_value = eigen_value;
  PureFunctional f = measure;
  double total = 0.0;
  std::vector<std::pair<double, Vector>> kept;
  for (Eigen::Index i = 0; i < best.members.cols(); ++i) {
    const double p = best.members.col(i).squaredNorm();
    if (p < 1e-15) continue;
    kept.emplace_back(p, best.members.col(i) / std::sqrt(p));
    total += p;
  }
  res.value = 0.0;
  for (auto& [p, v] : kept) {
    const double w = p / total;
    const double e = f(v);
    res.ensemble.weights.push_back(w);
    res.ensemble.members.push_back(PureState::normalized(shape, v));
    res.member_values.push_back(e);
    res.value += w * e;
  }
  return res;
}

RoofResult roof_search(const PureFunctional& search, const PureFunctional& score, const DensityOperator& rho,
                       const RoofConfig& cfg) {
  cfg.validate();
  const Spectrum spec = support_spectrum(rho);
  const int rank = static_cast<int>(spec.weights.size());
  if (rank == 1) {
    StartOutcome only;
    only.members = spec.vectors * std::sqrt(spec.weights(0));
    only.converged = true;
    PureFunctional f = score;
    Vector v = spec.vectors.col(0);
    return finish(score, rho.shape(), only, 0, 0, 1, f(v));
  }
  const int n = cfg.members_for_rank(rank);
  const Matrix scaled = spec.vectors * spec.weights.cwiseSqrt().asDiagonal();

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  auto run_start = [&](int k) {
    outcomes[static_cast<std::size_t>(k)] = descend(search, score, scaled, initial_isometry(n, rank, k, cfg.seed), cfg);
  };
  const int workers = std::min(cfg.threads, cfg.restarts);
  if (workers <= 1) {
    for (int k = 0; k < cfg.restarts; ++k) run_start(k);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int k = w; k < cfg.restarts; k += workers) run_start(k);
      });
    for (auto& t : pool) t.join();
  }

  int best = 0;
  for (int k = 1; k < cfg.restarts; ++k)
    if (outcomes[static_cast<std::size_t>(k)].value < outcomes[static_cast<std::size_t>(best)].value) best = k;
  return finish(score, rho.shape(), outcomes[static_cast<std::size_t>(best)], best, cfg.restarts, rank,
                outcomes[0].initial);
}

}  // namespace

void RoofConfig::validate() const {
  if (ensemble_size < 0) throw InvalidArgument("ensemble size must be non-negative");
  if (restarts < 1) throw InvalidArgument("restarts must be at least 1");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  if (!(step_tol > 0.0)) throw InvalidArgument("step tolerance must be positive");
  if (threads < 1) throw InvalidArgument("threads must be at least 1");
}

int RoofConfig::members_for_rank(int rank) const {
  if (ensemble_size == 0) return std::min(rank * rank, rank + 4);
  if (ensemble_size < rank) throw InvalidArgument("ensemble size below the rank of the state");
  if (ensemble_size > rank * rank) throw InvalidArgument("ensemble size above rank^2");
  return ensemble_size;
}

RoofResult roof_minimize(const PureFunctional& measure, const DensityOperator& rho, const RoofConfig& cfg) {
  return roof_search(measure, measure, rho, cfg);
}

PureFunctional gate_functional(PureFunctional measure, const SystemShape& shape, double delta_tol) {
  if (shape.size() < 2) throw InvalidShape("the delta gate needs at least two parties");
  std::vector<CutPurity> cuts;
  for (const auto& cut : all_bipartitions(shape.size())) cuts.emplace_back(shape, cut.block(0));
  return [measure = std::move(measure), cuts = std::move(cuts), delta_tol](const Vector& psi) mutable {
    for (auto& c : cuts)
      if (c(psi) >= 1.0 - delta_tol) return 0.0;
    return measure(psi);
  };
}

namespace {

RoofResult from_ensemble(const PureFunctional& measure, const Ensemble& e, RoofResult base) {
  PureFunctional f = measure;
  base.ensemble = e;
  base.member_values.clear();
  base.value = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    base.member_values.push_back(f(e.members[i].amplitudes()));
    base.value += e.weights[i] * base.member_values.back();
  }
  return base;
}

// Descends on the ungated measure and scores with the gated one; when that
// leaves a positive value, a biseparable decomposition (if one is found)
// gives zero.
RoofResult genuine_search(const PureFunctional& search, const PureFunctional& score, const DensityOperator& rho,
                          const RoofConfig& cfg) {
  RoofResult res = roof_search(search, score, rho, cfg);
  if (res.value <= 0.0 || res.rank == 1) return res;
  const BiseparabilityCertificate cert = biseparability_certificate(rho, cfg);
  if (!cert.found) return res;
  RoofResult alt = from_ensemble(score, cert.ensemble, res);
  return alt.value < res.value ? alt : res;
}

}  // namespace

RoofResult roof_minimize_genuine(const PureFunctional& measure, const DensityOperator& rho, const RoofConfig& cfg,
                                 double delta_tol) {
  return genuine_search(measure, gate_functional(measure, rho.shape(), delta_tol), rho, cfg);
}

bool all_members_biseparable(const Ensemble& e, double tol) {
  return std::all_of(e.members.begin(), e.members.end(), [&](const PureState& m) { return delta_pure(m, tol).value == 0; });
}

BiseparabilityCertificate biseparability_certificate(const DensityOperator& rho, const RoofConfig& cfg, double tol) {
  if (rho.parties() < 2) throw InvalidShape("biseparability needs at least two parties");
  MeasureSpec gmc;
  gmc.family = Family::GMC;
  PureFunctional gmc_f = make_pure_functional(gmc, rho.shape());

  // The squared objective is smooth at biseparable members, so the descent
  // can settle on exact zeros.
  const RoofResult r = roof_search(make_squared_gmc_functional(rho.shape()), gmc_f, rho, cfg);
  BiseparabilityCertificate cert;
  cert.ensemble = r.ensemble;
  cert.residual = r.value;
  cert.found = cert.residual <= tol && all_members_biseparable(cert.ensemble, kDeltaTol);
  return cert;
}

Evaluation evaluate_state(const MeasureSpec& spec, const AnyState& state, const Partition& partition, const RoofConfig& cfg) {
  spec.validate();
  const SystemShape& shape = shape_of(state);
  if (partition.size() < 2) throw InvalidArgument("a measure needs a partition with at least two blocks");
  for (int i : partition.support())
    if (static_cast<std::size_t>(i) >= shape.size()) throw InvalidArgument("partition refers to a missing subsystem");

  Evaluation out;
  if (const auto* psi = std::get_if<PureState>(&state); psi && partition.covers(shape.size())) {
    out.value = evaluate(spec, *psi, partition);
    out.method = "pure";
    return out;
  }
  const DensityOperator view = std::holds_alternative<PureState>(state)
                                   ? regroup_marginal(std::get<PureState>(state), partition)
                                   : regroup(std::get<DensityOperator>(state), partition);
  if (spec.mixed == MixedStrategy::Direct) {
    out.method = "direct";
    out.value = negativity_mixed(view);
    if (spec.gated()) {
      out.certificate = biseparability_certificate(view, cfg);
      if (out.certificate->found) out.value = 0.0;
      out.exact = false;
    }
    return out;
  }
  const PureFunctional score = make_pure_functional(spec, view.shape());
  out.roof = spec.gated() ? genuine_search(make_ungated_functional(spec, view.shape()), score, view, cfg)
                          : roof_search(score, score, view, cfg);
  out.value = out.roof->value;
  out.method = "convex_roof";
  out.exact = out.roof->rank == 1;
  return out;
}

}  // namespace gmekit
