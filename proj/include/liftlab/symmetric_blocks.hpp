#pragma once

#include <vector>

#include "liftlab/projection_model.hpp"
#include "liftlab/set_vector.hpp"

namespace liftlab {

// Block diagonalization of permutation-invariant matrices indexed by
// P_t(V). Such a matrix has entry (I, J) = f(|I|, |J|, |I u J|). Block k
// (0 <= k <= t) is indexed by layers k..t and occurs d_k = C(n,k) - C(n,k-1)
// times. Requires n >= 2t.
class SymmetricBasis {
 public:
  SymmetricBasis(int n, int t);

  int n() const { return n_; }
  int t() const { return t_; }
  double multiplicity(int k) const;
  // Coefficient of the union-size-s indicator matrix in entry (i, j) of
  // block k.
  double beta(int k, int i, int j, int s) const;

  // Blocks of the matrix with entry f_{|I u J|} on rows P_m(V), m <= t.
  std::vector<std::vector<double>> blocks(const std::vector<double>& f, int m) const;

 private:
  std::size_t index(int k, int i, int j, int s) const;
  int n_;
  int t_;
  std::vector<double> beta_;
};

// Model over p_s = y_I for |I| = s, s = 1..2t, for instances whose items
// are all identical. Blocks: the moment matrix and the capacity localizing
// matrix. The box localizing matrices are principal submatrices (up to a
// congruence) of the moment matrix and are omitted.
ProjectionModel build_symmetric_model(const KnapsackInstance& inst, int t);

// y_I = p_{|I|} over P_2t(V), with p_0 = 1 and params[s-1] = p_s.
FloatSetVector expand_symmetric(const std::vector<double>& params, int n, int t);

}  // namespace liftlab
