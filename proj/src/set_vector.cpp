#include "liftlab/set_vector.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

const Rational& zero() {
  static const Rational z(0);
  return z;
}

}  // namespace

SetVector::SetVector(FamilyPtr family, std::vector<Rational> values, bool extended)
    : family_(std::move(family)), values_(std::move(values)), extended_(extended) {
  if (values_.size() != family_->size()) throw InvalidArgument("value count does not match family size");
}

const Rational& SetVector::at(SubsetKey s) const {
  if (auto idx = family_->index_of(s)) return values_[*idx];
  if (extended_) return zero();
  throw InvalidArgument("subset " + to_string(s) + " is outside the vector's support");
}

void SetVector::set(SubsetKey s, const Rational& v) {
  auto idx = family_->index_of(s);
  if (!idx) throw InvalidArgument("subset " + to_string(s) + " is outside the vector's support");
  values_[*idx] = v;
}

SetVector SetVector::restricted_to(FamilyPtr target) const {
  SetVector out(target, extended_);
  for (std::size_t i = 0; i < target->size(); ++i) out.values_[i] = at((*target)[i]);
  return out;
}

Rationalized rationalize(const FloatSetVector& y, std::int64_t max_den) {
  Rationalized out{SetVector(y.family), 0.0};
  for (std::size_t i = 0; i < y.values.size(); ++i) {
    out.vector[i] = rationalize(y.values[i], max_den);
    out.max_rounding = std::max(out.max_rounding, std::abs(y.values[i] - to_double(out.vector[i])));
  }
  return out;
}

FloatSetVector to_float(const SetVector& y) {
  FloatSetVector out{y.family_ptr(), {}};
  out.values.reserve(y.size());
  for (const auto& v : y.values()) out.values.push_back(to_double(v));
  return out;
}

MultilinearPoly MultilinearPoly::constant(const Rational& c) {
  MultilinearPoly p;
  p.add(SubsetKey(), c);
  return p;
}

MultilinearPoly MultilinearPoly::from_constraint(const LinearConstraint& g) {
  MultilinearPoly p = constant(g.offset);
  for (std::size_t j = 0; j < g.coefficients.size(); ++j) p.add(SubsetKey::singleton(static_cast<int>(j)), g.coefficients[j]);
  return p;
}

void MultilinearPoly::add(SubsetKey monomial, const Rational& coefficient) {
  if (is_zero(coefficient)) return;
  auto [it, inserted] = terms_.emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (is_zero(it->second)) terms_.erase(it);
  }
}

Rational MultilinearPoly::coefficient(SubsetKey monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultilinearPoly::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.size(); }

SetVector shift(const SetVector& x, const SetVector& y) {
  const int n = std::max(x.ground_size(), y.ground_size());
  if (n > kMaxDenseGround) throw InvalidArgument("shift: dense enumeration limited to n <= 20");
  auto pv = make_family(SubsetFamily::power_set(n, SubsetKey::full(n)));
  SetVector out(pv);
  for (std::size_t a = 0; a < pv->size(); ++a) {
    SubsetKey i = (*pv)[a];
    Rational acc = 0;
    for (SubsetKey j : *pv) {
      const Rational& xj = x.at(j);
      if (is_zero(xj)) continue;
      acc += xj * y.at(i | j);
    }
    out[a] = std::move(acc);
  }
  return out;
}

SetVector poly_shift(const MultilinearPoly& p, const SetVector& y) { return poly_shift(p, y, y.family_ptr()); }

SetVector poly_shift(const MultilinearPoly& p, const SetVector& y, FamilyPtr target) {
  SetVector out(target, y.extended());
  Rational tmp;
  for (std::size_t a = 0; a < target->size(); ++a) {
    SubsetKey i = (*target)[a];
    Rational& acc = out[a];
    for (const auto& [mono, coef] : p.terms()) {
      const Rational& v = y.at(i | mono);
      if (is_zero(v)) continue;
      mpq_mul(tmp.get_mpq_t(), coef.get_mpq_t(), v.get_mpq_t());
      acc += tmp;
    }
  }
  return out;
}

MultilinearPoly char_poly(SubsetKey s, SubsetKey x) {
  if (!x.is_subset_of(s)) throw InvalidArgument("char_poly: X must be a subset of S");
  MultilinearPoly p;
  for_each_subset(s.minus(x), [&](SubsetKey extra) {
    p.add(x | extra, extra.size() % 2 == 0 ? Rational(1) : Rational(-1));
  });
  return p;
}

SetVector extend(const SetVector& y) { return SetVector(y.family_ptr(), y.values(), true); }

SetVector z_vector(const SetVector& yext, SubsetKey s, SubsetKey x) { return z_vector(yext, s, x, yext.family_ptr()); }

SetVector z_vector(const SetVector& yext, SubsetKey s, SubsetKey x, FamilyPtr target) {
  if (!x.is_subset_of(s)) throw InvalidArgument("z_vector: X must be a subset of S");
  if (!yext.extended()) throw InvalidArgument("z_vector: input must be extended");
  return poly_shift(char_poly(s, x), yext, std::move(target));
}

SetVector w_normalize(const SetVector& z, const Rational& z_empty) {
  SetVector out(z.family_ptr(), z.extended());
  if (is_zero(z_empty)) return out;
  for (std::size_t a = 0; a < z.size(); ++a) out[a] = z[a] / z_empty;
  return out;
}

SymMatrixExact moment_matrix(const SetVector& y, const std::vector<SubsetKey>& rows) {
  const std::size_t d = rows.size();
  SymMatrixExact m(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const Rational& v = y.at(rows[a] | rows[b]);
      if (!is_zero(v)) m.set(a, b, v);
    }
  }
  return m;
}

MomentMatrix moment_matrix(const SetVector& y, FamilyPtr t) {
  MomentMatrix out{t, moment_matrix(y, t->keys())};
  return out;
}

bool is_closed_under_shifting(const SubsetFamily& t, SubsetKey s) {
  for (SubsetKey y : t) {
    bool ok = true;
    for_each_subset(s, [&](SubsetKey x) {
      if (ok && !t.contains(x | y)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace liftlab
