#pragma once

#include <string>
#include <utility>
#include <vector>

#include "liftlab/rational.hpp"
#include "liftlab/set_vector.hpp"

namespace liftlab {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LPRow {
  std::vector<std::pair<int, Rational>> terms;  // variable index, coefficient
  RowSense sense = RowSense::kLessEqual;
  Rational rhs;
};

// maximize objective . x subject to rows, x >= 0. Variable j is named by
// (*variables)[j].
struct LPProblem {
  FamilyPtr variables;
  std::vector<Rational> objective;
  std::vector<LPRow> rows;

  int variable(SubsetKey s) const;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

std::string to_string(LPStatus s);

struct LPResult {
  LPStatus status = LPStatus::kInfeasible;
  Rational value;
  SetVector point;
  long iterations = 0;
};

// Exact primal simplex with Bland's rule, two phases.
LPResult simplex_exact(const LPProblem& p);

}  // namespace liftlab
