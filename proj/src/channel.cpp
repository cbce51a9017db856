#include "chancode/channel.hpp"

#include <algorithm>
#include <cmath>

namespace chancode {

namespace {
constexpr double kChannelTol = 1e-10;
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

KrausChannel::KrausChannel(int dim, std::vector<CMat> kraus)
    : dim_(dim), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error("channel needs at least one Kraus operator");
  CMat sum(dim_);
  for (const CMat& k : kraus_) {
    if (k.dim() != dim_) throw DimMismatchError("Kraus operator dim mismatch");
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, CMat::identity(dim_)) > kChannelTol) {
    throw Error("trace preservation violated: sum K^dag K != I");
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, {CMat::identity(dim)});
}

CMat apply_mat(const KrausChannel& n, const CMat& m) {
  if (m.dim() != n.dim()) throw DimMismatchError("channel input dim mismatch");
  CMat out(m.dim());
  for (const CMat& k : n.kraus()) out += k * m * k.adjoint();
  return out;
}

DensityOp apply(const KrausChannel& n, const DensityOp& rho) {
  return DensityOp(apply_mat(n, rho.mat()));
}

namespace {

// Weyl shift/phase operators; for dim 2 these are X and Z.
CMat weyl_shift(int dim) {
  CMat m(dim);
  for (int j = 0; j < dim; ++j) m.at((j + 1) % dim, j) = 1.0;
  return m;
}

CMat weyl_phase(int dim) {
  CMat m(dim);
  for (int j = 0; j < dim; ++j) {
    const double angle = kTwoPi * j / dim;
    m.at(j, j) = cplx(std::cos(angle), std::sin(angle));
  }
  return m;
}

}  // namespace

KrausChannel depolarizing(double eta, int dim) {
  const double dd = static_cast<double>(dim) * dim;
  const double lo = -1.0 / (dd - 1.0);
  if (1.0 - eta < lo - kChannelTol || 1.0 - eta > 1.0 + kChannelTol) {
    throw EtaOutOfRangeError("depolarizing noise fraction out of range");
  }
  const double w_id = std::max(1.0 - eta + eta / dd, 0.0);
  const double w_rest = std::max(eta / dd, 0.0);

  std::vector<CMat> kraus;
  kraus.reserve(static_cast<std::size_t>(dd));
  const CMat sx = weyl_shift(dim);
  const CMat sz = weyl_phase(dim);
  CMat xa = CMat::identity(dim);
  for (int a = 0; a < dim; ++a) {
    CMat w = xa;
    for (int b = 0; b < dim; ++b) {
      const double weight = (a == 0 && b == 0) ? w_id : w_rest;
      kraus.push_back(std::sqrt(weight) * w);
      w = w * sz;
    }
    xa = xa * sx;
  }
  return KrausChannel(dim, std::move(kraus));
}

KrausChannel flip_channel(FlipAxis axis, double p_f) {
  if (p_f < -kChannelTol || p_f > 1.0 + kChannelTol) {
    throw ProbOutOfRangeError("flip probability out of [0,1]");
  }
  p_f = std::clamp(p_f, 0.0, 1.0);
  const CMat& r = pauli(axis == FlipAxis::X ? 1 : 2);
  return KrausChannel(2, {std::sqrt(1.0 - p_f) * CMat::identity(2), std::sqrt(p_f) * r});
}

KrausChannel fixed_state_channel(const DensityOp& sigma, double eta) {
  if (eta < -kChannelTol || eta > 1.0 + kChannelTol) {
    throw EtaOutOfRangeError("fixed-state mixing fraction out of [0,1]");
  }
  eta = std::clamp(eta, 0.0, 1.0);
  const int d = sigma.dim();
  std::vector<CMat> kraus;
  kraus.push_back(std::sqrt(1.0 - eta) * CMat::identity(d));
  if (eta > 0.0) {
    // Measure-and-prepare branch. With sigma = sum_j s_j |v_j><v_j|, the
    // operators K_{jk} = sqrt(eta s_j) |v_j><e_k| send any input to eta sigma.
    const HermEigDecomp eig = herm_eig(sigma.mat());
    for (std::size_t i = 0; i < eig.projectors.size(); ++i) {
      const double s = std::max(eig.cluster_values[i], 0.0);
      if (s == 0.0) continue;
      // Gram-Schmidt on the projector columns recovers an orthonormal basis
      // of the eigenspace (needed when the cluster is degenerate).
      const CMat& p = eig.projectors[i];
      std::vector<std::vector<cplx>> basis;
      for (int c = 0; c < d; ++c) {
        std::vector<cplx> v(d);
        for (int r = 0; r < d; ++r) v[r] = p.at(r, c);
        for (const auto& u : basis) {
          cplx overlap = 0.0;
          for (int r = 0; r < d; ++r) overlap += std::conj(u[r]) * v[r];
          for (int r = 0; r < d; ++r) v[r] -= overlap * u[r];
        }
        double nrm = 0.0;
        for (int r = 0; r < d; ++r) nrm += std::norm(v[r]);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-6) continue;
        for (int r = 0; r < d; ++r) v[r] /= nrm;
        basis.push_back(std::move(v));
      }
      for (const auto& v : basis) {
        for (int k = 0; k < d; ++k) {
          CMat op(d);
          for (int r = 0; r < d; ++r) op.at(r, k) = std::sqrt(eta * s) * v[r];
          kraus.push_back(std::move(op));
        }
      }
    }
  }
  return KrausChannel(d, std::move(kraus));
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) throw DimMismatchError("composed channel dims differ");
  std::vector<CMat> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const CMat& ka : a.kraus())
    for (const CMat& kb : b.kraus()) kraus.push_back(ka * kb);
  return KrausChannel(a.dim(), std::move(kraus));
}

PauliTransfer pauli_transfer(const KrausChannel& n) {
  if (n.dim() != 2) throw DimMismatchError("Pauli transfer requires a qubit channel");
  PauliTransfer out;
  for (int j = 0; j < 4; ++j) {
    const CMat mapped = apply_mat(n, pauli(j));
    for (int i = 0; i < 4; ++i) {
      out.t[i][j] = 0.5 * (pauli(i) * mapped).trace().real();
    }
  }
  return out;
}

}  // namespace chancode
