#include "chancode/twirl.hpp"

#include <algorithm>
#include <cmath>

#include "chancode/rng.hpp"
#include "chancode/sampling.hpp"

namespace chancode {

namespace {
constexpr double kUnitaryTol = 1e-10;
constexpr double kDesignVerifyTol = 1e-9;
}  // namespace

TwoDesign::TwoDesign(std::vector<CMat> unitaries) : unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) throw Error("design needs at least one unitary");
  for (const CMat& u : unitaries_) {
    if (max_abs_diff(u.adjoint() * u, CMat::identity(u.dim())) > kUnitaryTol) {
      throw Error("design element is not unitary");
    }
  }
}

const TwoDesign& tetrahedral_design() {
  static const TwoDesign design = [] {
    const cplx i(0.0, 1.0);
    std::vector<CMat> w;
    w.push_back(CMat::identity(2));
    w.push_back(-i * pauli(1));
    w.push_back(-i * pauli(2));
    w.push_back(-i * pauli(3));
    w.push_back(0.5 * CMat{{1.0 - i, -1.0 - i}, {1.0 - i, 1.0 + i}});
    w.push_back(0.5 * CMat{{1.0 + i, 1.0 - i}, {-1.0 - i, 1.0 - i}});
    w.push_back(0.5 * CMat{{-1.0 - i, -1.0 - i}, {1.0 - i, -1.0 + i}});
    w.push_back(0.5 * CMat{{-1.0 + i, 1.0 - i}, {-1.0 - i, -1.0 - i}});
    w.push_back(0.5 * CMat{{-1.0 + i, -1.0 + i}, {1.0 + i, -1.0 - i}});
    w.push_back(0.5 * CMat{{-1.0 - i, 1.0 + i}, {-1.0 + i, -1.0 + i}});
    w.push_back(0.5 * CMat{{1.0 + i, -1.0 + i}, {1.0 + i, 1.0 - i}});
    w.push_back(0.5 * CMat{{1.0 - i, 1.0 + i}, {-1.0 + i, 1.0 + i}});
    return TwoDesign(std::move(w));
  }();
  return design;
}

KrausChannel twirl_channel(const KrausChannel& n, const TwoDesign& w) {
  if (n.dim() != 2) throw DimMismatchError("twirl_channel expects a qubit channel");
  const double scale = 1.0 / std::sqrt(static_cast<double>(w.size()));
  std::vector<CMat> kraus;
  kraus.reserve(w.size() * n.kraus().size());
  for (const CMat& u : w.unitaries()) {
    const CMat ud = u.adjoint();
    for (const CMat& k : n.kraus()) {
      kraus.push_back(scale * (ud * k * u));
    }
  }
  return KrausChannel(2, std::move(kraus));
}

DepolarizingFit fit_depolarizing(const KrausChannel& n) {
  const PauliTransfer pt = pauli_transfer(n);
  const double scaling = (pt.t[1][1] + pt.t[2][2] + pt.t[3][3]) / 3.0;
  DepolarizingFit fit{1.0 - scaling, 0.0};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double target = (i == j) ? (i == 0 ? 1.0 : scaling) : 0.0;
      fit.residual = std::max(fit.residual, std::abs(pt.t[i][j] - target));
    }
  }
  return fit;
}

std::vector<KrausChannel> default_probe_channels() {
  std::vector<KrausChannel> probes;
  probes.push_back(flip_channel(FlipAxis::X, 0.3));
  probes.push_back(flip_channel(FlipAxis::Y, 0.7));
  probes.push_back(fixed_state_channel(bloch_to_state({1, 0, 0}), 0.5));
  SplitMix64 rng(0x2de51900c0ffeeULL);
  probes.push_back(random_channel(rng));
  return probes;
}

bool verify_two_design(const TwoDesign& w, const std::vector<KrausChannel>& probes) {
  const TwoDesign& reference = tetrahedral_design();
  for (const KrausChannel& probe : probes) {
    const KrausChannel twirled = twirl_channel(probe, w);
    if (fit_depolarizing(twirled).residual >= kDesignVerifyTol) return false;
    // Map equality against the reference twirl, checked on the Pauli basis.
    const KrausChannel ref = twirl_channel(probe, reference);
    for (int j = 0; j < 4; ++j) {
      if (max_abs_diff(apply_mat(twirled, pauli(j)), apply_mat(ref, pauli(j))) >=
          kDesignVerifyTol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace chancode
