#include "chancode/discrimination.hpp"

#include <algorithm>
#include <cmath>

#include "chancode/rng.hpp"
#include "chancode/sampling.hpp"

namespace chancode {

namespace {
constexpr double kBoundaryTol = 1e-12;
}

Povm::Povm(std::vector<CMat> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error("POVM needs at least one element");
  CMat sum(elements_.front().dim());
  for (const CMat& m : elements_) {
    if (m.dim() != sum.dim()) throw DimMismatchError("POVM element dim mismatch");
    if (!m.is_hermitian(kPovmTol) || min_eigenvalue(0.5 * (m + m.adjoint())) < -kPovmTol) {
      throw Error("POVM element is not positive semidefinite");
    }
    sum += m;
  }
  if (max_abs_diff(sum, CMat::identity(sum.dim())) > kPovmTol) {
    throw Error("POVM elements do not sum to the identity");
  }
}

double success_probability(const Ensemble& e, const Povm& m) {
  if (e.size() != m.size()) throw CountMismatchError("POVM/ensemble outcome counts differ");
  if (e.dim() != m.dim()) throw DimMismatchError("POVM/ensemble dims differ");
  double p = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    p += e.items()[x].prior * (e.items()[x].state.mat() * m.elements()[x]).trace().real();
  }
  return p;
}

TrivialityCheck check_trivial(const Ensemble& e) {
  const auto& items = e.items();
  auto gap = [&](std::size_t j, std::size_t k) {
    const double lhs = std::abs(items[j].prior - items[k].prior);
    const double rhs =
        trace_norm(items[j].prior * items[j].state.mat() - items[k].prior * items[k].state.mat());
    return std::make_pair(lhs, rhs);
  };

  if (items.size() == 2) {
    // Trivial iff NOT(|q1 - q2| < ||q1 rho1 - q2 rho2||_1).
    const auto [lhs, rhs] = gap(0, 1);
    return {!(lhs < rhs), std::abs(lhs - rhs) < kBoundaryTol};
  }

  // Trivial iff some state j dominates: |q_j - q_k| > ||...||_1 for all k.
  bool boundary = false;
  for (std::size_t j = 0; j < items.size(); ++j) {
    bool dominates = true;
    for (std::size_t k = 0; k < items.size() && dominates; ++k) {
      if (k == j) continue;
      const auto [lhs, rhs] = gap(j, k);
      if (std::abs(lhs - rhs) < kBoundaryTol) boundary = true;
      if (!(lhs > rhs)) dominates = false;
    }
    if (dominates) return {true, boundary};
  }
  return {false, boundary};
}

bool is_trivial(const Ensemble& e) { return check_trivial(e).trivial; }

namespace {

double certificate_of(const Ensemble& e, const std::vector<CMat>& elements) {
  CMat gamma(e.dim());
  for (std::size_t y = 0; y < e.size(); ++y) {
    gamma += e.items()[y].prior * (e.items()[y].state.mat() * elements[y]);
  }
  const CMat herm = 0.5 * (gamma + gamma.adjoint());
  double residual = max_abs_diff(gamma, gamma.adjoint());
  for (const auto& item : e.items()) {
    residual = std::max(residual, -min_eigenvalue(herm - item.prior * item.state.mat()));
  }
  return residual;
}

}  // namespace

double certify_optimality(const Ensemble& e, const Povm& m) {
  if (e.size() != m.size()) throw CountMismatchError("POVM/ensemble outcome counts differ");
  return certificate_of(e, m.elements());
}

DiscrimResult helstrom(const Ensemble& e) {
  if (e.size() != 2) throw CountMismatchError("Helstrom solver needs exactly two states");
  const CMat delta =
      e.items()[0].prior * e.items()[0].state.mat() - e.items()[1].prior * e.items()[1].state.mat();
  const HermEigDecomp eig = herm_eig(delta);

  CMat m1(e.dim());
  for (std::size_t i = 0; i < eig.cluster_values.size(); ++i) {
    if (eig.cluster_values[i] >= 0.0) m1 += eig.projectors[i];
  }
  CMat m2 = CMat::identity(e.dim()) - m1;

  double norm1 = 0.0;
  for (double lambda : eig.eigenvalues) norm1 += std::abs(lambda);

  const TrivialityCheck triv = check_trivial(e);
  Povm povm({std::move(m1), std::move(m2)});
  const double residual = certify_optimality(e, povm);
  return {std::move(povm), 0.5 * (1.0 + norm1), triv.trivial, triv.boundary, residual};
}

namespace {

// Pseudo-inverse square root of a PSD matrix; eigenvalues below the cutoff are
// treated as kernel. Also reports the support projector.
struct InverseSqrt {
  CMat inv_sqrt;
  CMat support;
};

InverseSqrt psd_inverse_sqrt(const CMat& a) {
  const HermEigDecomp eig = herm_eig(0.5 * (a + a.adjoint()));
  // Relative kernel cutoff keeps the inverse bounded when the iteration
  // pushes some eigenvalue of the normalizer toward zero.
  const double cutoff = 1e-13 * std::max(std::abs(eig.eigenvalues.front()),
                                         std::abs(eig.eigenvalues.back()));
  InverseSqrt out{CMat(a.dim()), CMat(a.dim())};
  for (std::size_t i = 0; i < eig.cluster_values.size(); ++i) {
    if (eig.cluster_values[i] > cutoff) {
      out.inv_sqrt += (1.0 / std::sqrt(eig.cluster_values[i])) * eig.projectors[i];
      out.support += eig.projectors[i];
    }
  }
  return out;
}

CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

// Renormalizes PSD pieces into a POVM: M_x = S^{-1/2} A_x S^{-1/2} with
// S = sum A_x; any kernel of S goes to the element with the largest prior.
std::vector<CMat> normalize_to_povm(const Ensemble& e, const std::vector<CMat>& pieces) {
  CMat total(pieces.front().dim());
  for (const CMat& a : pieces) total += a;
  const InverseSqrt inv = psd_inverse_sqrt(total);
  std::vector<CMat> povm;
  povm.reserve(pieces.size());
  for (const CMat& a : pieces) povm.push_back(hermitize(inv.inv_sqrt * a * inv.inv_sqrt));

  const CMat kernel = CMat::identity(total.dim()) - inv.support;
  if (kernel.max_abs() > 1e-12) {
    std::size_t best = 0;
    for (std::size_t x = 1; x < e.size(); ++x) {
      if (e.items()[x].prior > e.items()[best].prior) best = x;
    }
    povm[best] += kernel;
  }
  return povm;
}

std::vector<CMat> square_root_seed(const Ensemble& e) {
  std::vector<CMat> pieces;
  pieces.reserve(e.size());
  for (const auto& item : e.items()) pieces.push_back(item.prior * item.state.mat());
  return normalize_to_povm(e, pieces);
}

std::vector<CMat> random_seed(const Ensemble& e, SplitMix64& rng) {
  std::vector<CMat> pieces;
  pieces.reserve(e.size());
  for (std::size_t x = 0; x < e.size(); ++x) {
    CMat g(e.dim());
    for (int r = 0; r < e.dim(); ++r)
      for (int c = 0; c < e.dim(); ++c) g.at(r, c) = cplx(rng.next_gaussian(), rng.next_gaussian());
    pieces.push_back(g * g.adjoint());
  }
  return normalize_to_povm(e, pieces);
}

}  // namespace

DiscrimResult optimal_discrimination(const Ensemble& e, const OptimizationOptions& options) {
  if (e.dim() != 2) throw DimMismatchError("general solver is qubit-only");
  if (e.size() < 2 || e.size() > 8) throw CountMismatchError("solver supports 2..8 states");

  std::vector<CMat> weighted;
  weighted.reserve(e.size());
  for (const auto& item : e.items()) weighted.push_back(item.prior * item.state.mat());

  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<CMat> elements;
    if (restart == 0) {
      elements = square_root_seed(e);
    } else {
      SplitMix64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(restart)));
      elements = random_seed(e, rng);
    }

    double best_residual = certificate_of(e, elements);
    std::vector<CMat> best = elements;
    for (int iter = 0; iter < options.max_iterations && best_residual >= options.target_tol;
         ++iter) {
      // M_x <- L^+ (q_x rho_x M_x q_x rho_x) L^+, L = (sum_x ...)^(1/2).
      std::vector<CMat> pieces;
      pieces.reserve(e.size());
      for (std::size_t x = 0; x < e.size(); ++x) {
        pieces.push_back(weighted[x] * elements[x] * weighted[x]);
      }
      CMat total(e.dim());
      for (const CMat& p : pieces) total += p;
      const InverseSqrt inv = psd_inverse_sqrt(total);
      const CMat kernel = CMat::identity(e.dim()) - inv.support;
      const double kernel_share = 1.0 / static_cast<double>(e.size());
      for (std::size_t x = 0; x < e.size(); ++x) {
        elements[x] = hermitize(inv.inv_sqrt * pieces[x] * inv.inv_sqrt);
        if (kernel.max_abs() > 1e-12) elements[x] += kernel_share * kernel;
      }
      const double residual = certificate_of(e, elements);
      if (residual < best_residual) {
        best_residual = residual;
        best = elements;
      }
    }

    if (best_residual < options.certificate_tol) {
      Povm povm(std::move(best));
      const double p = success_probability(e, povm);
      const TrivialityCheck triv = check_trivial(e);
      return {std::move(povm), p, triv.trivial, triv.boundary, best_residual};
    }
  }
  throw ConvergenceFailureError("no certified optimum within the restart budget");
}

OmpCheckResult omp_check(const Ensemble& e, const KrausChannel& n) {
  if (e.dim() != n.dim()) throw DimMismatchError("ensemble/channel dim mismatch");
  OmpCheckResult out{false, std::nullopt, 0.0, {}};

  std::vector<double> kappas;
  std::vector<std::pair<CMat, CMat>> diffs;  // (delta, delta after channel)
  for (std::size_t x = 0; x < e.size(); ++x) {
    for (std::size_t y = x + 1; y < e.size(); ++y) {
      const CMat delta =
          e.items()[x].prior * e.items()[x].state.mat() - e.items()[y].prior * e.items()[y].state.mat();
      double hs = 0.0;
      for (const cplx& v : delta.entries()) hs += std::norm(v);
      if (hs < 1e-20) {
        out.degenerate_pairs.emplace_back(x, y);
        continue;
      }
      const CMat mapped = apply_mat(n, delta);
      // Hilbert-Schmidt projection gives the unique proportionality candidate.
      cplx inner = 0.0;
      for (std::size_t i = 0; i < delta.entries().size(); ++i) {
        inner += std::conj(delta.entries()[i]) * mapped.entries()[i];
      }
      kappas.push_back(inner.real() / hs);
      diffs.emplace_back(delta, mapped);
    }
  }
  if (kappas.empty()) return out;  // nothing to classify

  double kappa = 0.0;
  for (double k : kappas) kappa += k;
  kappa /= static_cast<double>(kappas.size());

  bool agree = true;
  for (double k : kappas) {
    if (std::abs(k - kappa) > 1e-9) agree = false;
  }
  for (const auto& [delta, mapped] : diffs) {
    out.max_residual = std::max(out.max_residual, max_abs_diff(mapped, kappa * delta));
  }
  out.kappa = kappa;
  out.holds = agree && kappa > 0.0 && kappa <= 1.0 + 1e-12 && out.max_residual < 1e-9;
  return out;
}

IpsCheckResult information_preserving_check(const std::vector<DensityOp>& states,
                                            const KrausChannel& n, double tol) {
  if (states.size() < 2) throw CountMismatchError("preservation check needs two states");
  IpsCheckResult out{true, 0.0};
  for (std::size_t x = 0; x < states.size(); ++x) {
    for (std::size_t y = 0; y < states.size(); ++y) {
      if (x == y) continue;
      const CMat mapped_x = apply_mat(n, states[x].mat());
      const CMat mapped_y = apply_mat(n, states[y].mat());
      for (int step = 1; step < 20; ++step) {
        const double q = 0.05 * step;
        const double before = trace_norm(q * states[x].mat() - (1.0 - q) * states[y].mat());
        const double after = trace_norm(q * mapped_x - (1.0 - q) * mapped_y);
        out.max_deviation = std::max(out.max_deviation, std::abs(before - after));
      }
    }
  }
  out.holds = out.max_deviation < tol;
  return out;
}

PovmBloch povm_bloch_decompose(const Povm& m) {
  if (m.dim() != 2) throw DimMismatchError("Bloch decomposition requires qubit POVMs");
  PovmBloch out;
  for (const CMat& el : m.elements()) {
    const double w = el.trace().real();
    if (w < 1e-12) {
      out.items.push_back({0.0, {0, 0, 0}});
      continue;
    }
    BlochVec dir;
    dir.x = (el * pauli(1)).trace().real() / w;
    dir.y = (el * pauli(2)).trace().real() / w;
    dir.z = (el * pauli(3)).trace().real() / w;
    out.items.push_back({w, dir});
  }
  return out;
}

Povm update_measurement(const Povm& m) {
  const PovmBloch decomposed = povm_bloch_decompose(m);
  std::vector<CMat> flipped;
  flipped.reserve(decomposed.items.size());
  for (const auto& item : decomposed.items) {
    CMat el = 0.5 * item.w *
              (CMat::identity(2) - item.m.x * pauli(1) - item.m.y * pauli(2) - item.m.z * pauli(3));
    flipped.push_back(std::move(el));
  }
  CMat sum(2);
  for (const CMat& el : flipped) sum += el;
  if (max_abs_diff(sum, CMat::identity(2)) > kPovmTol) {
    throw NotResolvableError("updated elements no longer resolve the identity");
  }
  return Povm(std::move(flipped));
}

}  // namespace chancode
