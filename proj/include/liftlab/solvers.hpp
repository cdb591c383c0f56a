#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/hierarchy.hpp"
#include "liftlab/lasserre_sdp.hpp"
#include "liftlab/simplex.hpp"

namespace liftlab {

inline constexpr std::size_t kMaxSAVariables = 2000;

// max sum v_i x_i subject to the capacity row and 0 <= x_i <= 1, with one
// variable per item (named {i}).
LPProblem base_lp(const KnapsackInstance& inst);

// The level-t SA polytope in linear form over P_t(V), objective sum v_i y_{i}.
// Duplicate rows and rows implied by y >= 0 are dropped.
LPProblem sa_lp(const KnapsackInstance& inst, int t);

struct SAValue {
  Rational value;
  LPResult lp;
  std::size_t rows = 0;
};

SAValue sa_value(const KnapsackInstance& inst, int t);

enum class GapMode { kSA, kLasserre };

struct GapRow {
  int t = 0;
  std::optional<Rational> exact;  // SA rows
  double value = 0.0;
  double ratio = 0.0;             // value / OPT
  double residual = 0.0;          // Lasserre rows
  std::string status;             // "exact", "approx" or "error: ..."
};

std::vector<GapRow> gap_table(const KnapsackInstance& inst, int t_max, GapMode mode,
                              const LasserreOptions& opts = {});

}  // namespace liftlab
