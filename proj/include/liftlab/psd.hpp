#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "liftlab/rational.hpp"

namespace liftlab {

// Dense symmetric matrix over the rationals. set() writes both triangles.
class SymMatrixExact {
 public:
  SymMatrixExact() = default;
  explicit SymMatrixExact(std::size_t d) : d_(d), a_(d * d) {}

  static SymMatrixExact identity(std::size_t d);

  std::size_t dim() const { return d_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
  void set(std::size_t i, std::size_t j, const Rational& v) {
    a_[i * d_ + j] = v;
    a_[j * d_ + i] = v;
  }
  bool is_symmetric() const;

  bool operator==(const SymMatrixExact&) const = default;

 private:
  friend struct PsdElimination;
  std::size_t d_ = 0;
  std::vector<Rational> a_;
};

struct PsdVerdict {
  bool psd = true;
  // When psd is false: the elimination step that failed and the offending
  // value (a negative pivot, or a nonzero entry in a zero-pivot row).
  std::size_t step = 0;
  Rational witness;
};

// Exact PSD decision by symmetric Gaussian elimination: a positive pivot is
// eliminated; a zero pivot requires its whole remaining row to vanish; a
// negative pivot refutes. Takes its argument by value as the work matrix.
PsdVerdict psd_exact_verdict(SymMatrixExact m);
bool psd_exact(const SymMatrixExact& m);

// Symmetric double matrix holding only the lower triangle.
class SymMatrixFloat {
 public:
  SymMatrixFloat() = default;
  explicit SymMatrixFloat(std::size_t d) : d_(d), packed_(d * (d + 1) / 2, 0.0) {}

  static SymMatrixFloat identity(std::size_t d);
  static SymMatrixFloat diagonal(const std::vector<double>& diag);
  // Reads the lower triangle of a row-major d x d buffer.
  static SymMatrixFloat from_dense(std::span<const double> rowmajor, std::size_t d);
  static SymMatrixFloat from_exact(const SymMatrixExact& m);

  std::size_t dim() const { return d_; }
  double operator()(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { packed_[index(i, j)] = v; }
  std::vector<double> dense() const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }
  std::size_t d_ = 0;
  std::vector<double> packed_;
};

struct SymEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row k is the unit eigenvector for values[k]
};

// Householder tridiagonalization followed by implicit QL. Throws
// ConvergenceError if the QL phase exceeds 30*d iterations in total.
SymEigen eigen_sym(std::span<const double> rowmajor, std::size_t d, bool want_vectors = true);
SymEigen eigen_sym(const SymMatrixFloat& m, bool want_vectors = true);

double min_eigenvalue(const SymMatrixFloat& m);
bool psd_float(const SymMatrixFloat& m, double tol);

// Nearest PSD matrix in Frobenius norm: negative eigenvalues clamped to zero.
SymMatrixFloat project_psd(const SymMatrixFloat& m);

// In-place variant on a row-major buffer; returns the smallest eigenvalue of
// the input. Used by the SDP inner loop.
double project_psd_inplace(std::span<double> rowmajor, std::size_t d);

}  // namespace liftlab
