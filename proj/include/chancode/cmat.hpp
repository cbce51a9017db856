#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "chancode/errors.hpp"

namespace chancode {

using cplx = std::complex<double>;

// Dense complex matrix for small dimensions (2 is the common case, 8 the
// supported maximum). Row-major storage, value semantics, immutable in spirit:
// operations return new matrices.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}
  CMat(int dim, std::vector<cplx> entries);
  CMat(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMat identity(int dim);

  int dim() const { return dim_; }
  cplx& at(int r, int c) { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cplx& at(int r, int c) const { return entries_[static_cast<std::size_t>(r) * dim_ + c]; }
  const std::vector<cplx>& entries() const { return entries_; }

  CMat adjoint() const;
  cplx trace() const;
  double max_abs() const;

  bool is_hermitian(double tol) const;
  // Equality always goes through an explicit absolute tolerance.
  bool approx_equal(const CMat& other, double tol) const;

  CMat& operator+=(const CMat& rhs);
  CMat& operator-=(const CMat& rhs);

  friend CMat operator+(CMat lhs, const CMat& rhs) { return lhs += rhs; }
  friend CMat operator-(CMat lhs, const CMat& rhs) { return lhs -= rhs; }
  friend CMat operator*(const CMat& lhs, const CMat& rhs);
  friend CMat operator*(cplx s, CMat m);
  friend CMat operator*(CMat m, cplx s) { return s * std::move(m); }

 private:
  int dim_ = 0;
  std::vector<cplx> entries_;
};

double max_abs_diff(const CMat& a, const CMat& b);
CMat kron(const CMat& a, const CMat& b);

// Pauli basis. pauli(0) = I, pauli(1) = X, pauli(2) = Y, pauli(3) = Z.
const CMat& pauli(int i);

// Spectral decomposition of a Hermitian matrix. Eigenvalues are listed
// ascending with multiplicity; near-degenerate eigenvalues (gap < 1e-10) are
// merged into a single subspace projector, so cluster_values/projectors may be
// shorter than eigenvalues. sum_i cluster_values[i] * projectors[i]
// reconstructs the input.
struct HermEigDecomp {
  std::vector<double> eigenvalues;
  std::vector<double> cluster_values;
  std::vector<CMat> projectors;
};

// Tolerance for the Hermiticity precondition and for merging eigenvalue
// clusters into subspace projectors.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kEigenClusterGap = 1e-10;

HermEigDecomp herm_eig(const CMat& a);

// Sum of singular values. Hermitian inputs take the sum-of-|eigenvalue| path.
double trace_norm(const CMat& a);

double min_eigenvalue(const CMat& a);

}  // namespace chancode
