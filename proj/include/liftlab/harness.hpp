#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "liftlab/json_io.hpp"

namespace liftlab {

struct SweepConfig {
  std::string family = "uniform";  // "uniform" or "files"
  std::vector<int> n;
  std::vector<Rational> eps;
  std::vector<int> t;
  std::vector<std::string> files;
  std::vector<std::string> modes;  // "sa-cert", "sa-lp", "lasserre", "decompose"
  std::string output;
  double tol = 1e-4;
  bool symmetry = false;
  std::uint64_t seed = 1;
  bool timing = false;  // runtime_ms is 0 unless set, keeping the CSV reproducible
  int threads = 1;
};

// Field names mirror SweepConfig; "n", "eps", "t" accept a single value, a
// list, or {"from": a, "to": b} for integer ranges.
SweepConfig sweep_config_from_json(const Json& j);
void validate(const SweepConfig& cfg);

struct ResultRow {
  std::string instance;
  int n = 0;
  std::string eps;  // "p/q", empty for file instances
  int t = 0;
  std::string mode;
  std::string value;
  std::string ratio;
  std::string status;  // "exact", "approx" or "error"
  long runtime_ms = 0;
  double residual = 0.0;
  std::string message;
};

// Rows ordered by (instance, t, mode) with modes in configuration order.
std::vector<ResultRow> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader = "instance,n,eps,t,mode,value,ratio,status,runtime_ms";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
Json rows_to_json(const std::vector<ResultRow>& rows);

// "%.10g"
std::string format_decimal(double x);

}  // namespace liftlab
