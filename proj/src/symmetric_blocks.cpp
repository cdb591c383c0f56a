#include "liftlab/symmetric_blocks.hpp"

#include <cmath>
#include <limits>

#include "liftlab/error.hpp"
#include "liftlab/hierarchy.hpp"

namespace liftlab {

namespace {

// Sparse vector in layer i of the k-th isotypic component: one element of
// each pair {2r, 2r+1} (r < k), signed by how many second elements appear,
// plus i-k elements of {2k, ..., n-1}.
std::vector<std::pair<std::uint64_t, double>> harmonic_vector(int n, int k, int i) {
  std::vector<std::pair<std::uint64_t, double>> out;
  const int rest = n - 2 * k;
  for (SubsetKey r : subsets_of_size(rest, i - k)) {
    std::uint64_t tail = r.mask() << (2 * k);
    for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << k); ++choice) {
      std::uint64_t mask = tail;
      for (int p = 0; p < k; ++p) mask |= std::uint64_t{1} << (2 * p + ((choice >> p) & 1U));
      out.emplace_back(mask, std::popcount(choice) % 2 == 0 ? 1.0 : -1.0);
    }
  }
  const double norm = std::sqrt(static_cast<double>(out.size()));
  for (auto& e : out) e.second /= norm;
  return out;
}

}  // namespace

SymmetricBasis::SymmetricBasis(int n, int t) : n_(n), t_(t) {
  if (t < 0 || n < 2 * t) throw InvalidArgument("symmetric reduction needs n >= 2t");
  if (n > kMaxGroundSize) throw InvalidArgument("ground set too large");
  beta_.assign(index(t, t, t, 2 * t) + 1, 0.0);
  for (int k = 0; k <= t; ++k) {
    std::vector<std::vector<std::pair<std::uint64_t, double>>> u;
    for (int i = k; i <= t; ++i) u.push_back(harmonic_vector(n, k, i));
    for (int i = k; i <= t; ++i) {
      for (int j = i; j <= t; ++j) {
        std::vector<double> acc(2 * t + 1, 0.0);
        for (const auto& [a, va] : u[i - k]) {
          for (const auto& [b, vb] : u[j - k]) acc[std::popcount(a | b)] += va * vb;
        }
        for (int s = 0; s <= 2 * t; ++s) {
          beta_[index(k, i, j, s)] = acc[s];
          beta_[index(k, j, i, s)] = acc[s];
        }
      }
    }
  }
}

std::size_t SymmetricBasis::index(int k, int i, int j, int s) const {
  const std::size_t w = t_ + 1;
  return ((static_cast<std::size_t>(k) * w + i) * w + j) * (2 * t_ + 1) + s;
}

double SymmetricBasis::multiplicity(int k) const {
  double d = static_cast<double>(binomial(n_, k));
  if (k > 0) d -= static_cast<double>(binomial(n_, k - 1));
  return d;
}

double SymmetricBasis::beta(int k, int i, int j, int s) const { return beta_[index(k, i, j, s)]; }

std::vector<std::vector<double>> SymmetricBasis::blocks(const std::vector<double>& f, int m) const {
  if (m > t_) throw InvalidArgument("layer count exceeds the basis");
  std::vector<std::vector<double>> out;
  for (int k = 0; k <= m; ++k) {
    const int d = m - k + 1;
    std::vector<double> b(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = k; i <= m; ++i) {
      for (int j = k; j <= m; ++j) {
        double v = 0.0;
        for (int s = 0; s <= 2 * m && s < static_cast<int>(f.size()); ++s) v += beta(k, i, j, s) * f[s];
        b[(i - k) * d + (j - k)] = v;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

ProjectionModel build_symmetric_model(const KnapsackInstance& inst, int t) {
  const int n = inst.size();
  if (!inst.is_uniform()) throw InvalidArgument("symmetry flag needs identical items");
  if (t < 1) throw InvalidArgument("Lasserre level must be at least 1");
  SymmetricBasis basis(n, t);
  const double c = to_double(inst.sizes()[0]);
  const double v = to_double(inst.values()[0]);
  const double cap = to_double(inst.capacity());

  ProjectionModel model;
  model.params = 2 * t;
  for (int s = 1; s <= 2 * t; ++s) {
    model.weights.push_back(static_cast<double>(binomial(n, s)));
    model.lower.push_back(s <= t ? 0.0 : -std::numeric_limits<double>::infinity());
    model.upper.push_back(s <= t ? 1.0 : std::numeric_limits<double>::infinity());
  }
  model.objective.assign(model.params, 0.0);
  model.objective[0] = n * v;

  // Affine forms of p_s and of the capacity product q_s.
  auto p_form = [](int s) {
    AffineEntry e;
    if (s == 0) {
      e.constant = 1.0;
    } else {
      e.terms.emplace_back(s - 1, 1.0);
    }
    return e;
  };
  auto add = [](AffineEntry& into, const AffineEntry& f, double scale) {
    into.constant += scale * f.constant;
    for (const auto& [k, x] : f.terms) {
      bool merged = false;
      for (auto& [k2, x2] : into.terms) {
        if (k2 == k) {
          x2 += scale * x;
          merged = true;
        }
      }
      if (!merged) into.terms.emplace_back(k, scale * x);
    }
  };
  // (g*y)_I for |I| = s: C p_s - c (s p_s + (n - s) p_{s+1}).
  auto q_form = [&](int s) {
    AffineEntry e;
    add(e, p_form(s), cap - c * s);
    add(e, p_form(s + 1), -c * (n - s));
    return e;
  };

  auto make_blocks = [&](const std::string& label, int m, auto form) {
    for (int k = 0; k <= m; ++k) {
      ModelBlock block;
      block.label = label + ":" + std::to_string(k);
      block.dim = m - k + 1;
      block.multiplicity = basis.multiplicity(k);
      for (int i = k; i <= m; ++i) {
        for (int j = i; j <= m; ++j) {
          AffineEntry e;
          for (int s = std::max(i, j); s <= i + j; ++s) {
            double b = basis.beta(k, i, j, s);
            if (std::abs(b) > 1e-14) add(e, form(s), b);
          }
          block.entries.push_back(std::move(e));
        }
      }
      model.blocks.push_back(std::move(block));
    }
  };
  make_blocks("moment", t, p_form);
  make_blocks("capacity", t - 1, q_form);
  return model;
}

FloatSetVector expand_symmetric(const std::vector<double>& params, int n, int t) {
  FloatSetVector out{level_family(n, 2 * t), {}};
  out.values.reserve(out.family->size());
  for (SubsetKey s : *out.family) out.values.push_back(s.size() == 0 ? 1.0 : params[s.size() - 1]);
  return out;
}

}  // namespace liftlab
