#include "liftlab/lasserre_sdp.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/hierarchy.hpp"
#include "liftlab/symmetric_blocks.hpp"

namespace liftlab {

std::string to_string(StepOutcome o) {
  switch (o) {
    case StepOutcome::kFeasible:
      return "feasible";
    case StepOutcome::kStalled:
      return "stalled";
    case StepOutcome::kBudgetExhausted:
      return "budget-exhausted";
    case StepOutcome::kUnreachable:
      return "unreachable";
  }
  return "unknown";
}

bool LasserreResult::budget_exhausted() const {
  return std::any_of(steps.begin(), steps.end(),
                     [](const BisectionStep& s) { return s.run.outcome == StepOutcome::kBudgetExhausted; });
}

FeasibilityRun find_feasible(AlternatingProjector& projector, std::vector<double>& p, double target,
                             const LasserreOptions& opts) {
  FeasibilityRun run;
  if (!projector.target_reachable(target)) {
    run.outcome = StepOutcome::kUnreachable;
    run.residual = target;
    return run;
  }
  double last_check = -1.0;
  for (long s = 0; s < opts.max_sweeps; ++s) {
    double r = projector.sweep(p, target, opts.threshold);
    run.residual = r;
    run.sweeps = s + 1;
    if (r < opts.threshold) {
      run.outcome = StepOutcome::kFeasible;
      return run;
    }
    if (s < opts.warmup || (s - opts.warmup) % opts.checkpoint != 0) continue;
    if (last_check > 0.0) {
      double q = r / last_check;
      if (q >= 1.0) {
        run.outcome = StepOutcome::kStalled;
        return run;
      }
      double needed = opts.checkpoint * std::log(opts.threshold / r) / std::log(q);
      if (needed > static_cast<double>(opts.max_sweeps - s)) {
        run.outcome = StepOutcome::kStalled;
        return run;
      }
    }
    last_check = r;
  }
  run.outcome = StepOutcome::kBudgetExhausted;
  return run;
}

std::size_t moment_dimension(int n, int t) {
  std::size_t d = 0;
  for (int k = 0; k <= std::min(t, n); ++k) d += binomial(n, k);
  return d;
}

LasserreResult lasserre_value(const KnapsackInstance& inst, int t, const LasserreOptions& opts) {
  const int n = inst.size();
  if (t < 1) throw InvalidArgument("Lasserre level must be at least 1");
  if (moment_dimension(n, t) > kMaxMomentDimension) {
    throw InvalidArgument("moment matrix dimension " + std::to_string(moment_dimension(n, t)) + " exceeds 400");
  }
  if (!(opts.tol > 0.0)) throw InvalidArgument("tolerance must be positive");

  ProjectionModel model = opts.symmetry ? build_symmetric_model(inst, t) : build_full_model(inst, t);
  AlternatingProjector projector(model, opts.exec);

  OptResult opt = opt_solution(inst);
  std::vector<double> start(model.params, 0.0);
  if (opts.symmetry) {
    // Orbit average of the optimal packing: p_s = C(m,s)/C(n,s).
    const int m = opt.solution.chosen.size();
    for (int s = 1; s <= 2 * t; ++s) {
      start[s - 1] = static_cast<double>(binomial(m, s)) / static_cast<double>(binomial(n, s));
    }
  } else {
    LiftedVector integral = integer_to_moment(inst, opt.solution, 2 * t);
    for (std::size_t a = 1; a < integral.y.size(); ++a) start[a - 1] = to_double(integral.y[a]);
  }

  LasserreResult res;
  res.symmetric = opts.symmetry;
  res.lower = to_double(opt.value);
  res.upper = to_double(lp_value(inst));
  std::vector<double> best = start;
  res.residual = projector.residual(best, res.lower);
  double lo = res.lower;
  double hi = res.upper;
  std::vector<double> p = start;
  while (hi - lo >= opts.tol) {
    const double target = 0.5 * (lo + hi);
    FeasibilityRun run = find_feasible(projector, p, target, opts);
    res.sweeps += run.sweeps;
    res.steps.push_back({target, run});
    if (run.outcome == StepOutcome::kFeasible) {
      lo = target;
      best = p;
      res.residual = run.residual;
    } else {
      hi = target;
    }
  }
  res.value = projector.objective(best);
  if (opts.symmetry) {
    res.point = expand_symmetric(best, n, t);
  } else {
    res.point.family = level_family(n, 2 * t);
    res.point.values.assign(1, 1.0);
    res.point.values.insert(res.point.values.end(), best.begin(), best.end());
  }
  res.box_residual = box_localizing_residual(n, t, res.point.values);
  return res;
}

}  // namespace liftlab
