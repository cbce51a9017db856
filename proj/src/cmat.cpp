#include "chancode/cmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chancode {

CMat::CMat(int dim, std::vector<cplx> entries) : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(dim) * dim) {
    throw DimMismatchError("entry count does not match dimension");
  }
}

CMat::CMat(std::initializer_list<std::initializer_list<cplx>> rows) {
  dim_ = static_cast<int>(rows.size());
  entries_.reserve(static_cast<std::size_t>(dim_) * dim_);
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(dim_)) {
      throw DimMismatchError("matrix initializer is not square");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
  return m;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cplx& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

bool CMat::is_hermitian(double tol) const {
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
  return true;
}

bool CMat::approx_equal(const CMat& other, double tol) const {
  return dim_ == other.dim_ && max_abs_diff(*this, other) <= tol;
}

CMat& CMat::operator+=(const CMat& rhs) {
  if (dim_ != rhs.dim_) throw DimMismatchError("matrix addition dims differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
  if (dim_ != rhs.dim_) throw DimMismatchError("matrix subtraction dims differ");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

CMat operator*(const CMat& lhs, const CMat& rhs) {
  if (lhs.dim_ != rhs.dim_) throw DimMismatchError("matrix product dims differ");
  const int d = lhs.dim_;
  CMat out(d);
  for (int r = 0; r < d; ++r) {
    for (int k = 0; k < d; ++k) {
      const cplx v = lhs.at(r, k);
      if (v == cplx{}) continue;
      for (int c = 0; c < d; ++c) out.at(r, c) += v * rhs.at(k, c);
    }
  }
  return out;
}

CMat operator*(cplx s, CMat m) {
  for (cplx& e : m.entries_) e *= s;
  return m;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.dim() != b.dim()) throw DimMismatchError("matrix comparison dims differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  const int da = a.dim(), db = b.dim();
  CMat out(da * db);
  for (int ra = 0; ra < da; ++ra)
    for (int ca = 0; ca < da; ++ca)
      for (int rb = 0; rb < db; ++rb)
        for (int cb = 0; cb < db; ++cb)
          out.at(ra * db + rb, ca * db + cb) = a.at(ra, ca) * b.at(rb, cb);
  return out;
}

const CMat& pauli(int i) {
  static const CMat mats[4] = {
      CMat{{1.0, 0.0}, {0.0, 1.0}},
      CMat{{0.0, 1.0}, {1.0, 0.0}},
      CMat{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}},
      CMat{{1.0, 0.0}, {0.0, -1.0}},
  };
  return mats[i];
}

namespace {

// Groups ascending eigenvalues into clusters separated by more than the merge
// gap, then builds one projector per cluster via the supplied callback.
template <typename ProjectorFn>
HermEigDecomp cluster_spectrum(const std::vector<double>& ascending, ProjectorFn projector_of) {
  HermEigDecomp out;
  out.eigenvalues = ascending;
  std::size_t start = 0;
  while (start < ascending.size()) {
    std::size_t end = start + 1;
    while (end < ascending.size() && ascending[end] - ascending[end - 1] < kEigenClusterGap) ++end;
    double mean = 0.0;
    for (std::size_t k = start; k < end; ++k) mean += ascending[k];
    mean /= static_cast<double>(end - start);
    out.cluster_values.push_back(mean);
    out.projectors.push_back(projector_of(start, end));
    start = end;
  }
  return out;
}

HermEigDecomp herm_eig_2x2(const CMat& a) {
  const double p = a.at(0, 0).real();
  const double q = a.at(1, 1).real();
  const cplx b = a.at(0, 1);
  const double mean = 0.5 * (p + q);
  const double rad = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(b));

  HermEigDecomp out;
  out.eigenvalues = {mean - rad, mean + rad};
  if (2.0 * rad < kEigenClusterGap) {
    out.cluster_values = {mean};
    out.projectors = {CMat::identity(2)};
    return out;
  }
  // P(lambda) = (A - mu I) / (lambda - mu) for the other eigenvalue mu.
  auto projector = [&](double lambda, double mu) {
    CMat m = a - mu * CMat::identity(2);
    return (1.0 / (lambda - mu)) * m;
  };
  out.cluster_values = out.eigenvalues;
  out.projectors = {projector(mean - rad, mean + rad), projector(mean + rad, mean - rad)};
  return out;
}

// Embeds the complex Hermitian matrix A + iB as the real symmetric matrix
// [[A, -B], [B, A]], diagonalizes it by cyclic Jacobi, and reads complex
// spectral projectors back off the embedding blocks. Every eigenvalue of the
// input shows up twice in the embedding, so clusters always have even size.
HermEigDecomp herm_eig_jacobi(const CMat& a) {
  const int d = a.dim();
  const int n = 2 * d;
  std::vector<double> s(static_cast<std::size_t>(n) * n, 0.0);
  auto sref = [&](int r, int c) -> double& { return s[static_cast<std::size_t>(r) * n + c]; };
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const cplx v = a.at(r, c);
      sref(r, c) = v.real();
      sref(r + d, c + d) = v.real();
      sref(r, c + d) = -v.imag();
      sref(r + d, c) = v.imag();
    }
  }
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  auto vref = [&](int r, int c) -> double& { return v[static_cast<std::size_t>(r) * n + c]; };
  for (int i = 0; i < n; ++i) vref(i, i) = 1.0;

  constexpr double kOffTol = 1e-12;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(sref(i, j)));
    if (off < kOffTol) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = sref(p, q);
        if (std::abs(apq) < kOffTol) continue;
        const double theta = (sref(q, q) - sref(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double skp = sref(k, p), skq = sref(k, q);
          sref(k, p) = c * skp - sn * skq;
          sref(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          const double spk = sref(p, k), sqk = sref(q, k);
          sref(p, k) = c * spk - sn * sqk;
          sref(q, k) = sn * spk + c * sqk;
          const double vkp = vref(k, p), vkq = vref(k, q);
          vref(k, p) = c * vkp - sn * vkq;
          vref(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return sref(x, x) < sref(y, y); });
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = sref(order[i], order[i]);

  // Drop the doubling: eigenvalues with multiplicity come in exact pairs.
  std::vector<double> halved(d);
  for (int i = 0; i < d; ++i) halved[i] = 0.5 * (sorted[2 * i] + sorted[2 * i + 1]);

  auto projector_of = [&](std::size_t start, std::size_t end) {
    // Real projector over the doubled cluster; the complex projector sits in
    // its top-left (real part) and bottom-left (imaginary part) blocks.
    CMat proj(d);
    for (std::size_t k = 2 * start; k < 2 * end; ++k) {
      const int col = order[k];
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
          proj.at(r, c) += cplx(vref(r, col) * vref(c, col), vref(r + d, col) * vref(c, col));
        }
      }
    }
    return proj;
  };
  return cluster_spectrum(halved, projector_of);
}

}  // namespace

HermEigDecomp herm_eig(const CMat& a) {
  if (a.dim() < 1 || a.dim() > 8) throw DimMismatchError("herm_eig supports dims 1..8");
  if (!a.is_hermitian(kHermTol)) throw NotHermitianError("herm_eig requires a Hermitian matrix");
  if (a.dim() == 1) {
    HermEigDecomp out;
    out.eigenvalues = {a.at(0, 0).real()};
    out.cluster_values = out.eigenvalues;
    out.projectors = {CMat::identity(1)};
    return out;
  }
  if (a.dim() == 2) return herm_eig_2x2(a);
  return herm_eig_jacobi(a);
}

double trace_norm(const CMat& a) {
  if (a.is_hermitian(kHermTol)) {
    double sum = 0.0;
    for (double lambda : herm_eig(a).eigenvalues) sum += std::abs(lambda);
    return sum;
  }
  // General case: singular values are the square roots of eig(A^dag A).
  double sum = 0.0;
  for (double lambda : herm_eig(a.adjoint() * a).eigenvalues) {
    sum += std::sqrt(std::max(lambda, 0.0));
  }
  return sum;
}

double min_eigenvalue(const CMat& a) { return herm_eig(a).eigenvalues.front(); }

}  // namespace chancode
