#include "liftlab/psd.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"

namespace liftlab {

SymMatrixExact SymMatrixExact::identity(std::size_t d) {
  SymMatrixExact m(d);
  for (std::size_t i = 0; i < d; ++i) m.set(i, i, 1);
  return m;
}

bool SymMatrixExact::is_symmetric() const {
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = i + 1; j < d_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

struct PsdElimination {
  static PsdVerdict run(SymMatrixExact& m) {
    const std::size_t d = m.d_;
    auto& a = m.a_;
    Rational factor;
    Rational product;
    // Only the upper triangle of the trailing block is kept current.
    for (std::size_t k = 0; k < d; ++k) {
      const Rational& pivot = a[k * d + k];
      int s = sgn(pivot);
      if (s < 0) return {false, k, pivot};
      if (s == 0) {
        for (std::size_t j = k + 1; j < d; ++j) {
          if (sgn(a[k * d + j]) != 0) return {false, k, a[k * d + j]};
        }
        continue;
      }
      for (std::size_t i = k + 1; i < d; ++i) {
        const Rational& aki = a[k * d + i];
        if (sgn(aki) == 0) continue;
        mpq_div(factor.get_mpq_t(), aki.get_mpq_t(), pivot.get_mpq_t());
        for (std::size_t j = i; j < d; ++j) {
          const Rational& akj = a[k * d + j];
          if (sgn(akj) == 0) continue;
          mpq_mul(product.get_mpq_t(), factor.get_mpq_t(), akj.get_mpq_t());
          Rational& aij = a[i * d + j];
          mpq_sub(aij.get_mpq_t(), aij.get_mpq_t(), product.get_mpq_t());
        }
      }
    }
    return {};
  }
};

PsdVerdict psd_exact_verdict(SymMatrixExact m) { return PsdElimination::run(m); }

bool psd_exact(const SymMatrixExact& m) { return psd_exact_verdict(m).psd; }

SymMatrixFloat SymMatrixFloat::identity(std::size_t d) {
  SymMatrixFloat m(d);
  for (std::size_t i = 0; i < d; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrixFloat SymMatrixFloat::diagonal(const std::vector<double>& diag) {
  SymMatrixFloat m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

SymMatrixFloat SymMatrixFloat::from_dense(std::span<const double> rowmajor, std::size_t d) {
  if (rowmajor.size() != d * d) throw InvalidArgument("dense buffer size does not match dimension");
  SymMatrixFloat m(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, rowmajor[i * d + j]);
  }
  return m;
}

SymMatrixFloat SymMatrixFloat::from_exact(const SymMatrixExact& e) {
  SymMatrixFloat m(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, e(i, j).get_d());
  }
  return m;
}

std::vector<double> SymMatrixFloat::dense() const {
  std::vector<double> out(d_ * d_);
  for (std::size_t i = 0; i < d_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = (*this)(i, j);
      out[i * d_ + j] = v;
      out[j * d_ + i] = v;
    }
  }
  return out;
}

SymEigen eigen_sym(const SymMatrixFloat& m, bool want_vectors) {
  std::vector<double> dense = m.dense();
  return eigen_sym(dense, m.dim(), want_vectors);
}

double min_eigenvalue(const SymMatrixFloat& m) {
  if (m.dim() == 0) return 0.0;
  return eigen_sym(m, false).values.front();
}

bool psd_float(const SymMatrixFloat& m, double tol) {
  if (tol < 0) throw InvalidArgument("tolerance must be non-negative");
  return m.dim() == 0 || min_eigenvalue(m) >= -tol;
}

double project_psd_inplace(std::span<double> a, std::size_t d) {
  if (d == 0) return 0.0;
  if (d == 1) {
    double v = a[0];
    a[0] = std::max(v, 0.0);
    return v;
  }
  SymEigen eig = eigen_sym(a, d, true);
  std::size_t negatives = 0;
  while (negatives < d && eig.values[negatives] < 0.0) ++negatives;
  double lowest = eig.values.front();
  if (negatives == 0) return lowest;
  if (negatives == d) {
    std::fill(a.begin(), a.end(), 0.0);
    return lowest;
  }
  // Rebuild from whichever side of the spectrum is smaller.
  auto accumulate = [&](std::size_t from, std::size_t to, double sign) {
    for (std::size_t k = from; k < to; ++k) {
      const double lam = sign * eig.values[k];
      const double* v = &eig.vectors[k * d];
      for (std::size_t i = 0; i < d; ++i) {
        const double s = lam * v[i];
        if (s == 0.0) continue;
        double* row = &a[i * d];
        for (std::size_t j = 0; j <= i; ++j) row[j] += s * v[j];
      }
    }
  };
  if (negatives <= d - negatives) {
    accumulate(0, negatives, -1.0);  // A - sum_{lam<0} lam v v^T
  } else {
    std::fill(a.begin(), a.end(), 0.0);
    accumulate(negatives, d, 1.0);
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) a[j * d + i] = a[i * d + j];
  }
  return lowest;
}

SymMatrixFloat project_psd(const SymMatrixFloat& m) {
  std::vector<double> dense = m.dense();
  project_psd_inplace(dense, m.dim());
  return SymMatrixFloat::from_dense(dense, m.dim());
}

}  // namespace liftlab
