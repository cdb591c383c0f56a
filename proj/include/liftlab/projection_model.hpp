#pragma once

#include <string>
#include <vector>

#include "liftlab/execution.hpp"
#include "liftlab/knapsack.hpp"

namespace liftlab {

// constant + sum_k coef_k * p_{index_k}
struct AffineEntry {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;
};

// A symmetric matrix whose upper triangle (row-major, i <= j) is affine in
// the parameters. The block enters the Frobenius norm `multiplicity` times.
struct ModelBlock {
  std::string label;
  std::size_t dim = 0;
  double multiplicity = 1.0;
  std::vector<AffineEntry> entries;
};

// Parameterized moment vector: lower <= p <= upper, the objective is
// objective . p + objective_constant, and every block must be PSD.
struct ProjectionModel {
  std::size_t params = 0;
  std::vector<double> weights;  // norm weight per parameter
  std::vector<double> lower;    // -inf where unbounded
  std::vector<double> upper;    // +inf where unbounded
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<ModelBlock> blocks;
};

// Full model over P_2t(V): parameters are y_I for nonempty I, blocks are
// M_{P_t(V)}(y) and M_{P_{t-1}(V)}(g*y) for the capacity row. The box rows'
// localizing matrices are Gram matrices of the moment block's vectors
// (v_{I+i} and v_I - v_{I+i}), so they are implied and left out.
// Only y_I with |I| <= t carry the [0,1] bounds; larger sets appear solely
// off the diagonal and may leave [0,1].
ProjectionModel build_full_model(const KnapsackInstance& inst, int t);

// Alternating projections between the affine set {X_b = L_b(p)} and the
// product of the box/objective halfspace with the PSD cones.
// Most negative eigenvalue over the box rows' localizing matrices
// M_{P_{t-1}(V)}(x_i*y) and M_{P_{t-1}(V)}((1-x_i)*y), clamped at 0.
double box_localizing_residual(int n, int t, const std::vector<double>& y_over_support);

class AlternatingProjector {
 public:
  AlternatingProjector(const ProjectionModel& model, Execution exec);

  // Projects the A-point p through both sets in place. Returns the residual
  // of the incoming p: max(box or objective violation, -min eigenvalue).
  // When that residual is below stop_below, p is left untouched.
  double sweep(std::vector<double>& p, double target, double stop_below = -1.0);
  double residual(const std::vector<double>& p, double target);

  double objective(const std::vector<double>& p) const;
  // False when no point of the box reaches the target.
  bool target_reachable(double target) const;

 private:
  void fill_blocks(const std::vector<double>& p);
  double box_violation(const std::vector<double>& p, double target) const;
  void project_box(const std::vector<double>& p, double target, std::vector<double>& q) const;

  const ProjectionModel& model_;
  Execution exec_;
  std::vector<double> chol_;  // lower Cholesky factor of the normal matrix
  std::vector<std::vector<double>> work_;
  std::vector<double> min_eig_;
};

}  // namespace liftlab
