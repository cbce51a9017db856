#pragma once

#include <array>
#include <vector>

#include "chancode/cmat.hpp"
#include "chancode/ensemble.hpp"

namespace chancode {

// Completely positive trace-preserving map stored as Kraus operators.
// Construction checks sum_k K_k^dag K_k = I within 1e-10.
class KrausChannel {
 public:
  KrausChannel(int dim, std::vector<CMat> kraus);

  int dim() const { return dim_; }
  const std::vector<CMat>& kraus() const { return kraus_; }

  static KrausChannel identity(int dim);

 private:
  int dim_;
  std::vector<CMat> kraus_;
};

// Linear extension of the channel to arbitrary matrices (used for transfer
// matrices and operator differences, where inputs are not states).
CMat apply_mat(const KrausChannel& n, const CMat& m);
DensityOp apply(const KrausChannel& n, const DensityOp& rho);

// rho -> (1 - eta) rho + eta I/dim, as a mixture of Weyl (Pauli for dim 2)
// conjugations. Valid for 1 - eta in [-1/(dim^2-1), 1].
KrausChannel depolarizing(double eta, int dim = 2);

enum class FlipAxis { X, Y };

// rho -> (1 - p_f) rho + p_f R rho R for R in {X, Y}.
KrausChannel flip_channel(FlipAxis axis, double p_f);

// rho -> (1 - eta) rho + eta sigma for a fixed state sigma.
KrausChannel fixed_state_channel(const DensityOp& sigma, double eta);

// (A . B)[rho] = A[B[rho]].
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

// Real 4x4 representation of a qubit channel in the normalized Pauli basis:
// t[i][j] = tr(sigma_i N[sigma_j]) / 2. Row 0 is (1,0,0,0) for any channel.
struct PauliTransfer {
  std::array<std::array<double, 4>, 4> t{};
};

PauliTransfer pauli_transfer(const KrausChannel& n);

}  // namespace chancode
