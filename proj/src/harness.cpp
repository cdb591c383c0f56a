#include "liftlab/harness.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "liftlab/decomposition.hpp"
#include "liftlab/error.hpp"
#include "liftlab/sampling.hpp"
#include "liftlab/solvers.hpp"

namespace liftlab {

namespace {

const std::vector<std::string> kModes = {"sa-cert", "sa-lp", "lasserre", "decompose"};

// Largest moment support a decompose row will materialize.
constexpr std::size_t kMaxDecomposeSupport = 5000;

std::vector<int> int_list(const Json& j, const char* name) {
  std::vector<int> out;
  if (j.is_number_integer()) {
    out.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<int>());
  } else if (j.is_object() && j.contains("from") && j.contains("to")) {
    for (int v = j["from"].get<int>(); v <= j["to"].get<int>(); ++v) out.push_back(v);
  } else {
    throw InvalidArgument(std::string("\"") + name + "\" must be an integer, a list or {from, to}");
  }
  return out;
}

Rational rational_value(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return parse_rational(format_decimal(j.get<double>()));
  throw InvalidArgument("\"eps\" entries must be numbers or rational strings");
}

struct GridInstance {
  std::string id;
  std::optional<KnapsackInstance> inst;
  std::string error;
  int n = 0;
  std::optional<Rational> eps;
};

std::vector<GridInstance> grid_instances(const SweepConfig& cfg) {
  std::vector<GridInstance> out;
  if (cfg.family == "uniform") {
    for (int n : cfg.n) {
      for (const Rational& eps : cfg.eps) {
        GridInstance g;
        g.id = "uniform-n" + std::to_string(n) + "-eps" + to_string(eps);
        g.n = n;
        g.eps = eps;
        try {
          g.inst = uniform_gap_instance(n, eps);
        } catch (const InvalidArgument& e) {
          g.error = e.what();
        }
        out.push_back(std::move(g));
      }
    }
  } else {
    for (const auto& path : cfg.files) {
      GridInstance g;
      g.id = std::filesystem::path(path).stem().string();
      try {
        g.inst = load_instance(path);
        g.n = g.inst->size();
      } catch (const InvalidArgument& e) {
        g.error = e.what();
      }
      out.push_back(std::move(g));
    }
  }
  return out;
}

// Returns an empty string when the mode can run, otherwise the reason.
std::string cap_violation(const GridInstance& g, int t, const std::string& mode) {
  if (!g.inst) return g.error;
  const int n = g.n;
  if (n > kMaxBruteForceItems) return "n > 24 exceeds the brute-force optimum";
  if (t < 1) return "level must be at least 1";
  if (mode == "sa-cert") {
    if (!g.eps) return "sa-cert needs the uniform family";
    if (t < 2 || t >= n) return "certificate needs 2 <= t < n";
    if (t > 6) return "membership check limited to t <= 6";
  } else if (mode == "sa-lp") {
    if (level_family(n, t)->size() > kMaxSAVariables) return "SA level exceeds 2000 variables";
  } else if (mode == "lasserre") {
    if (moment_dimension(n, t) > kMaxMomentDimension) return "moment dimension exceeds 400";
  } else if (mode == "decompose") {
    if (t < 2) return "decompose needs t >= 2";
    if (n > kMaxDenseGround) return "decompose limited to n <= 20";
    std::size_t support = 0;
    for (int k = 0; k <= std::min(2 * t, n); ++k) support += binomial(n, k);
    if (support > kMaxDecomposeSupport) return "moment support too large for exact decomposition";
  }
  return "";
}

void run_row(const GridInstance& g, int t, const std::string& mode, const SweepConfig& cfg, std::uint64_t seed,
             ResultRow& row) {
  const KnapsackInstance& inst = *g.inst;
  const Rational opt = opt_bruteforce(inst);
  if (mode == "sa-cert") {
    MembershipOptions mo;
    LiftedVector cert = sa_gap_certificate(g.n, *g.eps, t);
    MembershipReport report = sa_membership(cert.y, inst, t, mo);
    Rational value = g.n * cert.y.at(SubsetKey::singleton(0));
    row.value = to_string(value);
    row.ratio = to_string(value / opt);
    row.status = report.accepted() ? "exact" : "error";
    if (!report.accepted()) row.message = "certificate rejected by the membership check";
  } else if (mode == "sa-lp") {
    SAValue sv = sa_value(inst, t);
    row.value = to_string(sv.value);
    row.ratio = to_string(sv.value / opt);
    row.status = "exact";
  } else if (mode == "lasserre") {
    LasserreOptions lo;
    lo.tol = cfg.tol;
    lo.symmetry = cfg.symmetry && inst.is_uniform() && g.n >= 2 * t;
    LasserreResult lr = lasserre_value(inst, t, lo);
    row.value = format_decimal(lr.value);
    row.ratio = format_decimal(lr.value / to_double(opt));
    row.residual = lr.residual;
    row.status = "approx";
    if (lr.budget_exhausted()) row.message = "some bisection steps exhausted the sweep budget";
  } else if (mode == "decompose") {
    std::mt19937_64 rng(seed);
    LiftedVector y = random_mixture(inst, 2 * t, 4, rng);
    SubsetKey s = big_items(inst, t - 1);
    if (s.size() > kMaxDecompositionSet) throw InvalidArgument("more than 16 big items");
    DecompositionResult res = decompose(y.y, inst, s, t - 1, t);
    DecompositionReport rep = verify_decomposition(res, y.y, inst);
    Rational value = 0;
    for (int i = 0; i < inst.size(); ++i) value += inst.values()[i] * y.y.at(SubsetKey::singleton(i));
    row.value = to_string(value);
    row.ratio = to_string(value / opt);
    row.status = rep.ok() ? "exact" : "error";
    if (!rep.ok()) row.message = "decomposition verification failed";
  }
}

}  // namespace

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

SweepConfig sweep_config_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("sweep config must be a JSON object");
  SweepConfig cfg;
  try {
    if (j.contains("family")) cfg.family = j["family"].get<std::string>();
    if (j.contains("n")) cfg.n = int_list(j["n"], "n");
    if (j.contains("t")) cfg.t = int_list(j["t"], "t");
    if (j.contains("eps")) {
      if (j["eps"].is_array()) {
        for (const auto& e : j["eps"]) cfg.eps.push_back(rational_value(e));
      } else {
        cfg.eps.push_back(rational_value(j["eps"]));
      }
    }
    if (j.contains("files")) cfg.files = j["files"].get<std::vector<std::string>>();
    if (j.contains("modes")) cfg.modes = j["modes"].get<std::vector<std::string>>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("symmetry")) cfg.symmetry = j["symmetry"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("timing")) cfg.timing = j["timing"].get<bool>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("sweep config: ") + e.what());
  }
  return cfg;
}

void validate(const SweepConfig& cfg) {
  if (cfg.family != "uniform" && cfg.family != "files") throw InvalidArgument("family must be uniform or files");
  if (cfg.t.empty()) throw InvalidArgument("empty t range");
  if (cfg.modes.empty()) throw InvalidArgument("no modes requested");
  for (const auto& m : cfg.modes) {
    if (std::find(kModes.begin(), kModes.end(), m) == kModes.end()) throw InvalidArgument("unknown mode " + m);
  }
  if (cfg.family == "uniform" && (cfg.n.empty() || cfg.eps.empty())) {
    throw InvalidArgument("uniform family needs non-empty n and eps ranges");
  }
  if (cfg.family == "files" && cfg.files.empty()) throw InvalidArgument("files family needs a file list");
  if (!(cfg.tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (cfg.threads < 1) throw InvalidArgument("threads must be at least 1");
}

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<GridInstance> grid = grid_instances(cfg);
  struct Task {
    std::size_t instance;
    int t;
    std::size_t mode;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int t : cfg.t) {
      for (std::size_t m = 0; m < cfg.modes.size(); ++m) tasks.push_back({i, t, m});
    }
  }
  std::vector<ResultRow> rows(tasks.size());
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto& task = tasks[k];
    const auto& g = grid[task.instance];
    ResultRow& row = rows[k];
    row.instance = g.id;
    row.n = g.n;
    row.eps = g.eps ? to_string(*g.eps) : "";
    row.t = task.t;
    row.mode = cfg.modes[task.mode];
    std::string reason = cap_violation(g, task.t, row.mode);
    if (!reason.empty()) {
      row.status = "error";
      row.message = reason;
    }
  }
  const Execution exec = cfg.threads > 1 ? Execution::kParallel : Execution::kSerial;
  run_indexed(tasks.size(), exec, [&](std::size_t k) {
    ResultRow& row = rows[k];
    if (row.status == "error") return;
    const auto start = std::chrono::steady_clock::now();
    try {
      run_row(grid[tasks[k].instance], tasks[k].t, row.mode, cfg, cfg.seed + k, row);
    } catch (const std::exception& e) {
      row.status = "error";
      row.value.clear();
      row.ratio.clear();
      row.message = e.what();
    }
    if (cfg.timing) {
      row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                           .count();
    }
  });
  return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.instance << ',' << r.n << ',' << r.eps << ',' << r.t << ',' << r.mode << ',' << r.value << ','
        << r.ratio << ',' << r.status << ',' << r.runtime_ms << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

Json rows_to_json(const std::vector<ResultRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json item = {{"instance", r.instance}, {"n", r.n},           {"eps", r.eps},       {"t", r.t},
                 {"mode", r.mode},         {"value", r.value},   {"ratio", r.ratio},   {"status", r.status},
                 {"runtime_ms", r.runtime_ms}};
    if (r.mode == "lasserre") item["residual"] = r.residual;
    if (!r.message.empty()) item["message"] = r.message;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace liftlab
