#pragma once

#include <string>
#include <vector>

#include "liftlab/execution.hpp"
#include "liftlab/knapsack.hpp"
#include "liftlab/projection_model.hpp"
#include "liftlab/set_vector.hpp"

namespace liftlab {

inline constexpr std::size_t kMaxMomentDimension = 400;

struct LasserreOptions {
  double tol = 1e-4;          // bisection stops when the bracket is this narrow
  bool symmetry = false;      // tie y_I by |I| (identical items only)
  long max_sweeps = 50000;    // per feasibility test
  double threshold = 1e-7;    // residual that counts as feasible
  long warmup = 500;          // sweeps before stall detection starts
  long checkpoint = 250;      // sweeps between stall checks
  Execution exec = Execution::kSerial;
};

enum class StepOutcome { kFeasible, kStalled, kBudgetExhausted, kUnreachable };

std::string to_string(StepOutcome o);

struct FeasibilityRun {
  StepOutcome outcome = StepOutcome::kStalled;
  double residual = 0.0;
  long sweeps = 0;
};

// Alternating projections for objective >= target starting from p. On
// success p is the feasible point; otherwise p holds the last iterate.
FeasibilityRun find_feasible(AlternatingProjector& projector, std::vector<double>& p, double target,
                             const LasserreOptions& opts);

struct BisectionStep {
  double target = 0.0;
  FeasibilityRun run;
};

struct LasserreResult {
  double value = 0.0;      // objective at the best near-feasible point
  double residual = 0.0;   // residual of that point
  double box_residual = 0.0;  // implied box-row localizing blocks at that point
  double lower = 0.0;      // initial bracket: OPT
  double upper = 0.0;      // initial bracket: LP optimum
  long sweeps = 0;
  bool symmetric = false;
  FloatSetVector point;    // over P_2t(V)
  std::vector<BisectionStep> steps;

  bool budget_exhausted() const;
};

// Moment-matrix dimension sum_{k<=t} C(n,k) of level t.
std::size_t moment_dimension(int n, int t);

// Bisection on the objective between OPT and the LP bound. The result is a
// lower estimate of the level-t Lasserre optimum.
LasserreResult lasserre_value(const KnapsackInstance& inst, int t, const LasserreOptions& opts = {});

}  // namespace liftlab
