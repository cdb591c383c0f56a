#pragma once

#include <map>
#include <vector>

#include "liftlab/knapsack.hpp"
#include "liftlab/psd.hpp"
#include "liftlab/rational.hpp"
#include "liftlab/subset.hpp"

namespace liftlab {

// Rationals indexed by a subset family. An extended vector reads as zero
// outside its family; a plain one throws there.
class SetVector {
 public:
  SetVector() : family_(make_family(SubsetFamily())) {}
  explicit SetVector(FamilyPtr family, bool extended = false)
      : family_(std::move(family)), values_(family_->size()), extended_(extended) {}
  SetVector(FamilyPtr family, std::vector<Rational> values, bool extended = false);

  const FamilyPtr& family_ptr() const { return family_; }
  const SubsetFamily& family() const { return *family_; }
  int ground_size() const { return family_->ground_size(); }
  std::size_t size() const { return values_.size(); }
  bool extended() const { return extended_; }

  const Rational& at(SubsetKey s) const;
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  void set(SubsetKey s, const Rational& v);
  const std::vector<Rational>& values() const { return values_; }

  // Values on another family; every member must be readable through at().
  SetVector restricted_to(FamilyPtr target) const;

  bool operator==(const SetVector& o) const {
    return *family_ == *o.family_ && values_ == o.values_ && extended_ == o.extended_;
  }

 private:
  FamilyPtr family_;
  std::vector<Rational> values_;
  bool extended_ = false;
};

struct FloatSetVector {
  FamilyPtr family;
  std::vector<double> values;
};

struct Rationalized {
  SetVector vector;
  double max_rounding = 0.0;  // largest |x - p/q| over all entries
};

Rationalized rationalize(const FloatSetVector& y, std::int64_t max_den);
FloatSetVector to_float(const SetVector& y);

// P(x) = sum_I a_I prod_{i in I} x_i, zero coefficients dropped.
class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  static MultilinearPoly constant(const Rational& c);
  static MultilinearPoly from_constraint(const LinearConstraint& g);

  void add(SubsetKey monomial, const Rational& coefficient);
  Rational coefficient(SubsetKey monomial) const;
  const std::map<SubsetKey, Rational, CanonicalLess>& terms() const { return terms_; }
  // Largest monomial degree, -1 for the zero polynomial.
  int degree() const;

 private:
  std::map<SubsetKey, Rational, CanonicalLess> terms_;
};

struct MomentMatrix {
  FamilyPtr family;
  SymMatrixExact matrix;
};

// result_I = sum_J x_J y_{I u J} over all of P(V); requires n <= 20.
SetVector shift(const SetVector& x, const SetVector& y);

// result_I = sum_J a_J y_{I u J} for I in target (default: y's family).
SetVector poly_shift(const MultilinearPoly& p, const SetVector& y);
SetVector poly_shift(const MultilinearPoly& p, const SetVector& y, FamilyPtr target);

// prod_{i in X} x_i prod_{j in S \ X} (1 - x_j).
MultilinearPoly char_poly(SubsetKey s, SubsetKey x);

SetVector extend(const SetVector& y);

// P^X * y' for an extended y'.
SetVector z_vector(const SetVector& yext, SubsetKey s, SubsetKey x);
SetVector z_vector(const SetVector& yext, SubsetKey s, SubsetKey x, FamilyPtr target);

SetVector w_normalize(const SetVector& z, const Rational& z_empty);

MomentMatrix moment_matrix(const SetVector& y, FamilyPtr t);
SymMatrixExact moment_matrix(const SetVector& y, const std::vector<SubsetKey>& rows);

bool is_closed_under_shifting(const SubsetFamily& t, SubsetKey s);

}  // namespace liftlab
