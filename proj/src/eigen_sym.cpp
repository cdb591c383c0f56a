// Symmetric eigensolver: Householder reduction to tridiagonal form followed by
// the implicit QL algorithm (after the EISPACK tred2/tql2 pair).
#include <algorithm>
#include <cmath>
#include <numeric>

#include "liftlab/error.hpp"
#include "liftlab/psd.hpp"

namespace liftlab {

namespace {

// Reduces the row-major matrix held in v to tridiagonal form. On exit d holds
// the diagonal, e the subdiagonal (e[0] = 0) and v the orthogonal transform.
void tridiagonalize(std::vector<double>& v, std::size_t n, std::vector<double>& d, std::vector<double>& e) {
  auto V = [&](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };
  for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
        V(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        V(j, i) = f;
        g = e[j] + V(j, j) * f;
        for (std::size_t k = j + 1; k + 1 <= i; ++k) {
          g += V(k, j) * d[k];
          e[k] += V(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k + 1 <= i; ++k) V(k, j) -= (f * e[k] + g * d[k]);
        d[j] = V(i - 1, j);
        V(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  // Accumulate the transformations.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    V(n - 1, i) = V(i, i);
    V(i, i) = 1.0;
    double h = d[i + 1];
    if (h != 0.0) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
        for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = V(n - 1, j);
    V(n - 1, j) = 0.0;
  }
  V(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e). w holds eigenvectors as rows
// (the transpose of the tred2 output) so each rotation touches two rows.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* w, std::size_t n) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const std::size_t budget = 30 * n;
  std::size_t iterations = 0;
  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      do {
        if (++iterations > budget) {
          throw ConvergenceError("symmetric QL iteration exceeded " + std::to_string(budget) + " steps");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (w != nullptr) {
            double* row_i = &(*w)[ii * n];
            double* row_next = &(*w)[(ii + 1) * n];
            for (std::size_t k = 0; k < n; ++k) {
              double t = row_next[k];
              row_next[k] = s * row_i[k] + c * t;
              row_i[k] = c * row_i[k] - s * t;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

SymEigen eigen_sym(std::span<const double> a, std::size_t n, bool want_vectors) {
  if (a.size() != n * n) throw InvalidArgument("eigen_sym: buffer size does not match dimension");
  SymEigen out;
  if (n == 0) return out;
  std::vector<double> v(a.begin(), a.end());
  std::vector<double> d(n), e(n);
  tridiagonalize(v, n, d, e);

  std::vector<double> w;
  if (want_vectors) {
    w.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) w[i * n + k] = v[k * n + i];
    }
  }
  ql_implicit(d, e, want_vectors ? &w : nullptr, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (want_vectors) {
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      std::copy_n(&w[order[k] * n], n, &out.vectors[k * n]);
    }
  }
  return out;
}

}  // namespace liftlab
