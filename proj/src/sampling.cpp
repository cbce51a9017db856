#include "chancode/sampling.hpp"

#include <cmath>

namespace chancode {

CMat random_hermitian(SplitMix64& rng, int dim, double scale) {
  CMat m(dim);
  for (int r = 0; r < dim; ++r) {
    m.at(r, r) = scale * rng.next_gaussian();
    for (int c = r + 1; c < dim; ++c) {
      const cplx v(0.5 * scale * rng.next_gaussian(), 0.5 * scale * rng.next_gaussian());
      m.at(r, c) = v;
      m.at(c, r) = std::conj(v);
    }
  }
  return m;
}

BlochVec random_bloch(SplitMix64& rng) {
  double x = rng.next_gaussian();
  double y = rng.next_gaussian();
  double z = rng.next_gaussian();
  double nrm = std::sqrt(x * x + y * y + z * z);
  if (nrm < 1e-12) return {0, 0, 0};
  const double radius = std::cbrt(rng.next_double());
  return {radius * x / nrm, radius * y / nrm, radius * z / nrm};
}

DensityOp random_density(SplitMix64& rng) { return bloch_to_state(random_bloch(rng)); }

KrausChannel random_channel(SplitMix64& rng) {
  // Two Gaussian columns of height 4, orthonormalized (modified Gram-Schmidt).
  std::vector<std::vector<cplx>> cols(2, std::vector<cplx>(4));
  for (auto& col : cols)
    for (auto& v : col) v = cplx(rng.next_gaussian(), rng.next_gaussian());
  for (int c = 0; c < 2; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      cplx overlap = 0.0;
      for (int r = 0; r < 4; ++r) overlap += std::conj(cols[prev][r]) * cols[c][r];
      for (int r = 0; r < 4; ++r) cols[c][r] -= overlap * cols[prev][r];
    }
    double nrm = 0.0;
    for (int r = 0; r < 4; ++r) nrm += std::norm(cols[c][r]);
    nrm = std::sqrt(nrm);
    for (int r = 0; r < 4; ++r) cols[c][r] /= nrm;
  }
  // Rows 0..1 and rows 2..3 of the isometry become the two Kraus operators.
  CMat k1(2), k2(2);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      k1.at(r, c) = cols[c][r];
      k2.at(r, c) = cols[c][r + 2];
    }
  }
  return KrausChannel(2, {std::move(k1), std::move(k2)});
}

namespace {

std::vector<double> random_priors(SplitMix64& rng, int n, bool equal) {
  std::vector<double> q(n, 1.0 / n);
  if (equal) return q;
  // Exponential spacings normalized to the simplex.
  double total = 0.0;
  for (double& v : q) {
    v = -std::log(1.0 - rng.next_double());
    total += v;
  }
  for (double& v : q) v /= total;
  return q;
}

}  // namespace

Ensemble random_ensemble(SplitMix64& rng, int n, bool equal_priors) {
  const std::vector<double> q = random_priors(rng, n, equal_priors);
  std::vector<EnsembleItem> items;
  for (int i = 0; i < n; ++i) items.push_back({q[i], random_density(rng)});
  return Ensemble(2, std::move(items));
}

Ensemble random_planar_ensemble(SplitMix64& rng, int n, bool equal_priors) {
  const std::vector<double> q = random_priors(rng, n, equal_priors);
  std::vector<EnsembleItem> items;
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * 3.14159265358979323846 * rng.next_double();
    const double radius = std::sqrt(rng.next_double());
    items.push_back(
        {q[i], bloch_to_state({radius * std::cos(angle), radius * std::sin(angle), 0.0})});
  }
  return Ensemble(2, std::move(items));
}

}  // namespace chancode
