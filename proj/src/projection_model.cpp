#include "liftlab/projection_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "liftlab/error.hpp"
#include "liftlab/hierarchy.hpp"
#include "liftlab/psd.hpp"

namespace liftlab {

namespace {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

}  // namespace

ProjectionModel build_full_model(const KnapsackInstance& inst, int t) {
  const int n = inst.size();
  if (t < 1) throw InvalidArgument("Lasserre level must be at least 1");
  auto support = level_family(n, 2 * t);
  auto top = level_family(n, t);
  auto below = level_family(n, t - 1);

  ProjectionModel model;
  model.params = support->size() - 1;
  model.weights.assign(model.params, 1.0);
  model.objective.assign(model.params, 0.0);
  for (std::size_t a = 1; a < support->size(); ++a) {
    const bool boxed = (*support)[a].size() <= t;
    model.lower.push_back(boxed ? 0.0 : -kUnbounded);
    model.upper.push_back(boxed ? 1.0 : kUnbounded);
  }
  for (int i = 0; i < n; ++i) {
    model.objective[*support->index_of(SubsetKey::singleton(i)) - 1] = to_double(inst.values()[i]);
  }

  // Accumulates scale * y_s into a sparse affine form.
  auto add_moment = [&](std::map<int, double>& acc, double& constant, SubsetKey s, double scale) {
    auto idx = *support->index_of(s);
    if (idx == 0) {
      constant += scale;
    } else {
      acc[static_cast<int>(idx) - 1] += scale;
    }
  };
  auto finish = [](std::map<int, double>& acc, double constant) {
    AffineEntry e;
    e.constant = constant;
    for (const auto& [k, v] : acc) {
      if (v != 0.0) e.terms.emplace_back(k, v);
    }
    return e;
  };

  ModelBlock moment;
  moment.label = "moment";
  moment.dim = top->size();
  for (std::size_t a = 0; a < top->size(); ++a) {
    for (std::size_t b = a; b < top->size(); ++b) {
      std::map<int, double> acc;
      double constant = 0.0;
      add_moment(acc, constant, (*top)[a] | (*top)[b], 1.0);
      moment.entries.push_back(finish(acc, constant));
    }
  }
  model.blocks.push_back(std::move(moment));

  {
    const LinearConstraint g = inst.capacity_constraint();
    ModelBlock block;
    block.label = g.label;
    block.dim = below->size();
    const double offset = to_double(g.offset);
    std::vector<double> coef;
    for (const auto& c : g.coefficients) coef.push_back(to_double(c));
    for (std::size_t a = 0; a < below->size(); ++a) {
      for (std::size_t b = a; b < below->size(); ++b) {
        SubsetKey s = (*below)[a] | (*below)[b];
        std::map<int, double> acc;
        double constant = 0.0;
        if (offset != 0.0) add_moment(acc, constant, s, offset);
        for (int j = 0; j < n; ++j) {
          if (coef[j] != 0.0) add_moment(acc, constant, s.with(j), coef[j]);
        }
        block.entries.push_back(finish(acc, constant));
      }
    }
    model.blocks.push_back(std::move(block));
  }
  return model;
}

double box_localizing_residual(int n, int t, const std::vector<double>& y) {
  auto support = level_family(n, 2 * t);
  auto below = level_family(n, t - 1);
  if (y.size() != support->size()) throw InvalidArgument("point does not match the level-t support");
  const std::size_t d = below->size();
  auto at = [&](SubsetKey s) { return y[*support->index_of(s)]; };
  double worst = 0.0;
  std::vector<double> upper(d * d);
  std::vector<double> lower(d * d);
  for (int i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        SubsetKey s = (*below)[a] | (*below)[b];
        upper[a * d + b] = at(s.with(i));
        lower[a * d + b] = at(s) - at(s.with(i));
      }
    }
    worst = std::max(worst, -eigen_sym(upper, d, false).values.front());
    worst = std::max(worst, -eigen_sym(lower, d, false).values.front());
  }
  return worst;
}

AlternatingProjector::AlternatingProjector(const ProjectionModel& model, Execution exec)
    : model_(model), exec_(exec), min_eig_(model.blocks.size(), 0.0) {
  const std::size_t m = model.params;
  if (model.weights.size() != m || model.objective.size() != m || model.lower.size() != m || model.upper.size() != m) {
    throw InvalidArgument("model vectors mismatch");
  }
  std::vector<double> a(m * m, 0.0);
  for (std::size_t v = 0; v < m; ++v) a[v * m + v] = model.weights[v];
  for (const auto& block : model.blocks) {
    std::size_t e = 0;
    for (std::size_t i = 0; i < block.dim; ++i) {
      for (std::size_t j = i; j < block.dim; ++j, ++e) {
        const double w = block.multiplicity * (i == j ? 1.0 : 2.0);
        const auto& terms = block.entries[e].terms;
        for (const auto& [r, cr] : terms) {
          for (const auto& [c, cc] : terms) a[r * m + c] += w * cr * cc;
        }
      }
    }
    work_.emplace_back(block.dim * block.dim, 0.0);
  }
  // Dense Cholesky, lower triangle.
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
    if (d <= 0.0) throw std::logic_error("normal matrix is not positive definite");
    d = std::sqrt(d);
    a[j * m + j] = d;
    for (std::size_t i = j + 1; i < m; ++i) {
      double s = a[i * m + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
      a[i * m + j] = s / d;
    }
  }
  chol_ = std::move(a);
}

void AlternatingProjector::fill_blocks(const std::vector<double>& p) {
  run_indexed(model_.blocks.size(), exec_, [&](std::size_t b) {
    const auto& block = model_.blocks[b];
    auto& x = work_[b];
    const std::size_t d = block.dim;
    std::size_t e = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j, ++e) {
        const auto& entry = block.entries[e];
        double v = entry.constant;
        for (const auto& [k, c] : entry.terms) v += c * p[k];
        x[i * d + j] = v;
        x[j * d + i] = v;
      }
    }
  });
}

double AlternatingProjector::objective(const std::vector<double>& p) const {
  double s = model_.objective_constant;
  for (std::size_t v = 0; v < p.size(); ++v) s += model_.objective[v] * p[v];
  return s;
}

bool AlternatingProjector::target_reachable(double target) const {
  double best = model_.objective_constant;
  for (std::size_t v = 0; v < model_.params; ++v) {
    const double a = model_.objective[v];
    if (a == 0.0) continue;
    const double bound = a > 0.0 ? model_.upper[v] : model_.lower[v];
    best += a * bound;
  }
  return best >= target;
}

double AlternatingProjector::box_violation(const std::vector<double>& p, double target) const {
  double worst = std::max(0.0, target - objective(p));
  for (std::size_t v = 0; v < p.size(); ++v) {
    worst = std::max({worst, model_.lower[v] - p[v], p[v] - model_.upper[v]});
  }
  return worst;
}

void AlternatingProjector::project_box(const std::vector<double>& p, double target, std::vector<double>& q) const {
  const std::size_t m = p.size();
  auto shifted = [&](double lambda) {
    for (std::size_t v = 0; v < m; ++v) {
      q[v] = std::clamp(p[v] + lambda * model_.objective[v] / model_.weights[v], model_.lower[v], model_.upper[v]);
    }
    return objective(q);
  };
  if (shifted(0.0) >= target) return;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && shifted(hi) < target; ++i) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    double mid = 0.5 * (lo + hi);
    if (shifted(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  shifted(hi);
}

double AlternatingProjector::residual(const std::vector<double>& p, double target) {
  fill_blocks(p);
  run_indexed(model_.blocks.size(), exec_, [&](std::size_t b) {
    const std::size_t d = model_.blocks[b].dim;
    min_eig_[b] = d == 0 ? 0.0 : eigen_sym(work_[b], d, false).values.front();
  });
  double r = box_violation(p, target);
  for (double e : min_eig_) r = std::max(r, -e);
  return r;
}

double AlternatingProjector::sweep(std::vector<double>& p, double target, double stop_below) {
  const std::size_t m = model_.params;
  fill_blocks(p);
  run_indexed(model_.blocks.size(), exec_,
              [&](std::size_t b) { min_eig_[b] = project_psd_inplace(work_[b], model_.blocks[b].dim); });
  double r = box_violation(p, target);
  for (double e : min_eig_) r = std::max(r, -e);
  if (r < stop_below) return r;

  std::vector<double> rhs(m);
  project_box(p, target, rhs);
  for (std::size_t v = 0; v < m; ++v) rhs[v] *= model_.weights[v];
  for (std::size_t b = 0; b < model_.blocks.size(); ++b) {
    const auto& block = model_.blocks[b];
    const auto& x = work_[b];
    const std::size_t d = block.dim;
    std::size_t e = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j, ++e) {
        const auto& entry = block.entries[e];
        const double w = block.multiplicity * (i == j ? 1.0 : 2.0) * (x[i * d + j] - entry.constant);
        for (const auto& [k, c] : entry.terms) rhs[k] += w * c;
      }
    }
  }
  // Forward and back substitution with the Cholesky factor.
  for (std::size_t i = 0; i < m; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol_[i * m + k] * rhs[k];
    rhs[i] = s / chol_[i * m + i];
  }
  for (std::size_t i = m; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= chol_[k * m + i] * rhs[k];
    rhs[i] = s / chol_[i * m + i];
  }
  p = std::move(rhs);
  return r;
}

}  // namespace liftlab
