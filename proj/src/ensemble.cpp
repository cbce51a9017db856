#include "chancode/ensemble.hpp"

#include <cmath>

#include "chancode/channel.hpp"

namespace chancode {

namespace {
constexpr double kStateTol = 1e-10;
}

double BlochVec::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityOp::DensityOp(CMat mat) : mat_(std::move(mat)) {
  if (!mat_.is_hermitian(kStateTol)) {
    throw NotHermitianError("density operator must be Hermitian");
  }
  if (std::abs(mat_.trace() - cplx(1.0)) > kStateTol) {
    throw Error("density operator must have unit trace");
  }
  if (min_eigenvalue(mat_) < -kStateTol) {
    throw Error("density operator must be positive semidefinite");
  }
}

DensityOp bloch_to_state(const BlochVec& r) {
  if (r.norm() > 1.0 + kStateTol) {
    throw BlochOutOfBallError("Bloch vector lies outside the unit ball");
  }
  CMat m = 0.5 * (CMat::identity(2) + r.x * pauli(1) + r.y * pauli(2) + r.z * pauli(3));
  return DensityOp(std::move(m));
}

BlochVec state_to_bloch(const DensityOp& rho) {
  if (rho.dim() != 2) throw DimMismatchError("state_to_bloch requires a qubit state");
  BlochVec r;
  r.x = (rho.mat() * pauli(1)).trace().real();
  r.y = (rho.mat() * pauli(2)).trace().real();
  r.z = (rho.mat() * pauli(3)).trace().real();
  return r;
}

Ensemble::Ensemble(int dim, std::vector<EnsembleItem> items)
    : dim_(dim), items_(std::move(items)) {
  if (items_.size() < 2) throw Error("ensemble needs at least two states");
  double total = 0.0;
  for (const auto& item : items_) {
    if (item.prior < -kStateTol || item.prior > 1.0 + kStateTol) {
      throw Error("prior out of [0,1]");
    }
    if (item.state.dim() != dim_) throw DimMismatchError("ensemble state dim mismatch");
    total += item.prior;
  }
  if (std::abs(total - 1.0) > kStateTol) throw Error("priors must sum to one");
}

bool Ensemble::has_equal_priors(double tol) const {
  const double q = 1.0 / static_cast<double>(items_.size());
  for (const auto& item : items_) {
    if (std::abs(item.prior - q) > tol) return false;
  }
  return true;
}

Ensemble builtin(BuiltinEnsemble name) {
  const double s3 = std::sqrt(3.0);
  switch (name) {
    case BuiltinEnsemble::SZ:
      return Ensemble(2, {{0.5, bloch_to_state({0, 0, 1})}, {0.5, bloch_to_state({0, 0, -1})}});
    case BuiltinEnsemble::SBB84:
      return Ensemble(2, {{0.25, bloch_to_state({0, 0, 1})},
                          {0.25, bloch_to_state({0, 0, -1})},
                          {0.25, bloch_to_state({1, 0, 0})},
                          {0.25, bloch_to_state({-1, 0, 0})}});
    case BuiltinEnsemble::TRINE_MOD:
      return Ensemble(2, {{0.5, bloch_to_state({0.5, 0, 0})},
                          {0.25, bloch_to_state({-0.5, s3 / 2.0, 0})},
                          {0.25, bloch_to_state({-0.5, -s3 / 2.0, 0})}});
  }
  throw Error("unknown builtin ensemble");
}

Ensemble apply_channel_to_ensemble(const Ensemble& e, const KrausChannel& n) {
  if (e.dim() != n.dim()) throw DimMismatchError("ensemble/channel dim mismatch");
  std::vector<EnsembleItem> items;
  items.reserve(e.size());
  for (const auto& item : e.items()) {
    items.push_back({item.prior, apply(n, item.state)});
  }
  return Ensemble(e.dim(), std::move(items));
}

}  // namespace chancode
