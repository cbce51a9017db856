#pragma once

#include <vector>

#include "chancode/cmat.hpp"

namespace chancode {

class KrausChannel;

// Bloch vector of a qubit state, |r| <= 1.
struct BlochVec {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

// Density operator: Hermitian, unit trace, positive semidefinite (all within
// 1e-10). Construction validates; instances are immutable afterwards.
class DensityOp {
 public:
  explicit DensityOp(CMat mat);

  const CMat& mat() const { return mat_; }
  int dim() const { return mat_.dim(); }

 private:
  CMat mat_;
};

// s(r) = (I + r . sigma) / 2.
DensityOp bloch_to_state(const BlochVec& r);
BlochVec state_to_bloch(const DensityOp& rho);

struct EnsembleItem {
  double prior;
  DensityOp state;
};

// A finite set of states with a priori probabilities. Priors sum to one.
class Ensemble {
 public:
  Ensemble(int dim, std::vector<EnsembleItem> items);

  int dim() const { return dim_; }
  const std::vector<EnsembleItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  // True when every prior equals 1/n within tol.
  bool has_equal_priors(double tol = 1e-10) const;

 private:
  int dim_;
  std::vector<EnsembleItem> items_;
};

enum class BuiltinEnsemble {
  SZ,        // {|0>, |1>} with equal priors
  SBB84,     // {|0>, |1>, |+>, |->} with equal priors
  TRINE_MOD  // modified trine, priors (1/2, 1/4, 1/4)
};

Ensemble builtin(BuiltinEnsemble name);

Ensemble apply_channel_to_ensemble(const Ensemble& e, const KrausChannel& n);

}  // namespace chancode
