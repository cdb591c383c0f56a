#include <omp.h>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "liftlab/decomposition.hpp"
#include "liftlab/error.hpp"
#include "liftlab/harness.hpp"
#include "liftlab/json_io.hpp"
#include "liftlab/solvers.hpp"

using namespace liftlab;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

struct Globals {
  bool json = false;
  int threads = 1;
  std::optional<std::uint64_t> seed;
};

Execution execution(const Globals& g) { return g.threads > 1 ? Execution::kParallel : Execution::kSerial; }

std::string with_decimal(const Rational& r) { return to_string(r) + " (" + format_decimal(to_double(r)) + ")"; }

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void print_report(const char* title, const MembershipReport& r, std::size_t limit = 10) {
  std::printf("%-14s %s (%zu checks, %zu violations)\n", title, r.accepted() ? "accepted" : "rejected", r.checks,
              r.violations.size());
  for (std::size_t i = 0; i < r.violations.size() && i < limit; ++i) {
    const auto& v = r.violations[i];
    std::printf("  %s on %s: %s\n", v.constraint.c_str(), v.family.c_str(), v.margin.c_str());
  }
  if (r.violations.size() > limit) std::printf("  ... %zu more\n", r.violations.size() - limit);
}

// Instance from --instance, or the uniform gap instance from --n/--eps.
struct InstanceSource {
  std::string path;
  int n = 0;
  std::string eps;

  void attach(CLI::App* cmd) {
    cmd->add_option("--instance", path, "Instance JSON file");
    cmd->add_option("--n", n, "Uniform instance size (with --eps)");
    cmd->add_option("--eps", eps, "Uniform instance eps, capacity 2(1-eps)");
  }
  KnapsackInstance load() const {
    if (!path.empty()) return load_instance(path);
    if (n > 0 && !eps.empty()) return uniform_gap_instance(n, parse_rational(eps));
    throw InvalidArgument("give --instance FILE or --n N --eps E");
  }
};

int cmd_sa_cert(const Globals& g, int n, const std::string& eps_text, int t, const std::string& delta_text,
                bool emit) {
  Rational eps = parse_rational(eps_text);
  Rational delta = parse_rational(delta_text);
  MembershipOptions mo{execution(g), emit};
  GapCertificateCheck c = verify_gap_certificate(n, eps, t, delta, mo);
  const bool ok = c.report.accepted() && c.bound_ok;
  if (g.json) {
    Json j = {{"n", n},
              {"eps", to_string(eps)},
              {"t", t},
              {"delta", to_string(delta)},
              {"alpha", to_string(c.alpha)},
              {"value", to_string(c.value)},
              {"value_decimal", to_double(c.value)},
              {"bound", to_string(c.bound)},
              {"bound_ok", c.bound_ok},
              {"opt", "1"},
              {"report", report_to_json(c.report)}};
    print_json(j);
  } else {
    std::printf("certificate    n=%d eps=%s t=%d delta=%s\n", n, to_string(eps).c_str(), t, to_string(delta).c_str());
    std::printf("alpha          %s\n", to_string(c.alpha).c_str());
    std::printf("value          %s\n", with_decimal(c.value).c_str());
    std::printf("bound          (2-eps)/(1+delta) * OPT = %s, OPT = 1\n", with_decimal(c.bound).c_str());
    std::printf("bound_ok       %s\n", c.bound_ok ? "yes" : "no");
    print_report("membership", c.report);
    if (emit && !c.report.accepted()) print_json(report_to_json(c.report));
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_sa_value(const Globals& g, const InstanceSource& src, int t) {
  KnapsackInstance inst = src.load();
  SAValue sv = sa_value(inst, t);
  Rational opt = opt_bruteforce(inst);
  Rational lp = lp_value(inst);
  if (g.json) {
    print_json({{"mode", "sa"},
                {"t", t},
                {"value", to_string(sv.value)},
                {"value_decimal", to_double(sv.value)},
                {"lp_value", to_string(lp)},
                {"opt", to_string(opt)},
                {"ratio", to_string(sv.value / opt)},
                {"rows", sv.rows},
                {"iterations", sv.lp.iterations}});
  } else {
    std::printf("sa value       %s at t=%d\n", with_decimal(sv.value).c_str(), t);
    std::printf("lp value       %s\n", with_decimal(lp).c_str());
    std::printf("opt            %s\n", with_decimal(opt).c_str());
    std::printf("ratio          %s\n", with_decimal(sv.value / opt).c_str());
    std::printf("simplex        %zu rows, %zu variables, %ld pivots\n", sv.rows, sv.lp.point.size(), sv.lp.iterations);
  }
  return kOk;
}

int cmd_lasserre(const Globals& g, const InstanceSource& src, int t, const LasserreOptions& base) {
  KnapsackInstance inst = src.load();
  LasserreOptions opts = base;
  opts.exec = execution(g);
  LasserreResult r = lasserre_value(inst, t, opts);
  if (g.json) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
      steps.push_back({{"target", s.target},
                       {"outcome", to_string(s.run.outcome)},
                       {"residual", s.run.residual},
                       {"sweeps", s.run.sweeps}});
    }
    print_json({{"mode", "lasserre"},
                {"t", t},
                {"value", r.value},
                {"residual", r.residual},
                {"box_residual", r.box_residual},
                {"iterations", r.sweeps},
                {"symmetry", r.symmetric},
                {"bracket", {r.lower, r.upper}},
                {"budget_exhausted", r.budget_exhausted()},
                {"steps", steps},
                {"note", "numerical lower estimate of the level-t optimum"}});
  } else {
    std::printf("lasserre value %s at t=%d (numerical lower estimate)\n", format_decimal(r.value).c_str(), t);
    std::printf("residual       %.3g (implied box blocks %.3g)\n", r.residual, r.box_residual);
    std::printf("bracket        [%s, %s] = [OPT, LP]\n", format_decimal(r.lower).c_str(),
                format_decimal(r.upper).c_str());
    std::printf("sweeps         %ld over %zu bisection steps%s\n", r.sweeps, r.steps.size(),
                r.symmetric ? " (symmetric blocks)" : "");
    for (const auto& s : r.steps) {
      std::printf("  target %-12s %-16s residual %.3g after %ld sweeps\n", format_decimal(s.target).c_str(),
                  to_string(s.run.outcome).c_str(), s.run.residual, s.run.sweeps);
    }
  }
  return kOk;
}

int cmd_decompose(const Globals& g, const InstanceSource& src, int t, int k, const std::string& point_path,
                  const std::string& s_text) {
  KnapsackInstance inst = src.load();
  PointInput point = load_point(point_path, inst.size());
  SubsetKey s = s_text.empty() ? big_items(inst, t - 1) : parse_subset(s_text);
  DecompositionResult res = decompose(point.y, inst, s, k, t, execution(g));
  DecompositionReport rep = verify_decomposition(res, point.y, inst, {execution(g), false});
  if (g.json) {
    Json j = decomposition_to_json(res, inst);
    j["rounded"] = point.rounded;
    j["max_rounding"] = point.max_rounding;
    j["pattern"] = report_to_json(rep.pattern);
    j["level"] = report_to_json(rep.level);
    j["residual"] = report_to_json(rep.residual);
    j["reconstruction"] = report_to_json(rep.reconstruction);
    j["ok"] = rep.ok();
    print_json(j);
  } else {
    if (point.rounded) {
      std::printf("input rounded to rationals (denominator <= 1e9), max error %.3g\n", point.max_rounding);
    }
    std::printf("S = %s, k = %d, t = %d, %zu parts\n", to_string(s).c_str(), k, t, res.parts.size());
    std::printf("%-20s %-24s %s\n", "X", "weight", "value of w^X");
    for (const auto& p : res.parts) {
      Rational value = 0;
      for (int i = 0; i < inst.size(); ++i) value += inst.values()[i] * p.w.at(SubsetKey::singleton(i));
      std::printf("%-20s %-24s %s\n", to_string(p.x).c_str(), to_string(p.weight).c_str(),
                  with_decimal(value).c_str());
    }
    print_report("(a) pattern", rep.pattern);
    print_report("(b) level t-k", rep.level);
    print_report("(c) residual", rep.residual);
    print_report("(d) reconstruct", rep.reconstruction);
  }
  return rep.ok() ? kOk : kVerificationFailed;
}

int cmd_verify(const Globals& g, const InstanceSource& src, const std::string& point_path, int t,
               const std::string& mode, bool emit) {
  KnapsackInstance inst = src.load();
  PointInput point = load_point(point_path, inst.size());
  MembershipOptions mo{execution(g), emit};
  MembershipReport r = mode == "sa" ? sa_membership(point.y, inst, t, mo) : lasserre_membership(point.y, inst, t, mo);
  if (g.json) {
    Json j = report_to_json(r);
    j["mode"] = mode;
    j["t"] = t;
    j["rounded"] = point.rounded;
    j["max_rounding"] = point.max_rounding;
    print_json(j);
  } else {
    if (point.rounded) {
      std::printf("input rounded to rationals (denominator <= 1e9), max error %.3g\n", point.max_rounding);
    }
    print_report(mode == "sa" ? "sa" : "lasserre", r);
  }
  return r.accepted() ? kOk : kVerificationFailed;
}

int cmd_sweep(const Globals& g, const std::string& config_path, const std::optional<std::string>& output,
              const std::optional<double>& tol, bool symmetry, bool timing) {
  SweepConfig cfg = sweep_config_from_json(read_json_file(config_path));
  if (output) cfg.output = *output;
  if (tol) cfg.tol = *tol;
  if (symmetry) cfg.symmetry = true;
  if (timing) cfg.timing = true;
  if (g.seed) cfg.seed = *g.seed;
  if (g.threads > 1) cfg.threads = g.threads;
  std::vector<ResultRow> rows = run_sweep(cfg);
  if (!cfg.output.empty()) emit_csv(rows, cfg.output);
  if (g.json) {
    print_json(rows_to_json(rows));
  } else if (cfg.output.empty()) {
    write_csv(rows, std::cout);
  } else {
    std::printf("%zu rows written to %s\n", rows.size(), cfg.output.c_str());
  }
  for (const auto& r : rows) {
    if (r.status == "error") {
      std::fprintf(stderr, "%s t=%d %s: %s\n", r.instance.c_str(), r.t, r.mode.c_str(), r.message.c_str());
    }
  }
  bool failed = std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.status == "error"; });
  return failed ? kVerificationFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liftlab: Sherali-Adams and Lasserre lifts of the knapsack LP"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  std::uint64_t seed = 0;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized sweep modes");

  int cert_n = 0;
  int cert_t = 0;
  std::string cert_eps;
  std::string cert_delta;
  bool emit = false;
  auto* sa_cert = app.add_subcommand("sa-cert", "Build and verify the SA gap certificate on the uniform instance");
  sa_cert->add_option("--n", cert_n, "Item count")->required();
  sa_cert->add_option("--eps", cert_eps, "Capacity is 2(1-eps)")->required();
  sa_cert->add_option("--t", cert_t, "SA level")->required();
  sa_cert->add_option("--delta", cert_delta, "Bound parameter, t <= delta*n")->required();
  sa_cert->add_flag("--emit-violations", emit, "Dump offending matrices as JSON");

  InstanceSource sv_src;
  int sv_t = 0;
  auto* sa_val = app.add_subcommand("sa-value", "Optimize exactly over the level-t SA polytope");
  sv_src.attach(sa_val);
  sa_val->add_option("--t", sv_t, "SA level")->required();

  InstanceSource la_src;
  int la_t = 0;
  LasserreOptions la_opts;
  auto* las = app.add_subcommand("lasserre-value", "Estimate the level-t Lasserre optimum");
  la_src.attach(las);
  las->add_option("--t", la_t, "Lasserre level")->required();
  las->add_option("--tol", la_opts.tol, "Bisection tolerance");
  las->add_option("--max-sweeps", la_opts.max_sweeps, "Sweep budget per feasibility test");
  las->add_flag("--symmetry", la_opts.symmetry, "Tie y_I by |I| (identical items)");

  InstanceSource de_src;
  int de_t = 0;
  int de_k = 0;
  std::string de_point;
  std::string de_s;
  auto* dec = app.add_subcommand("decompose", "Decompose a moment vector into conditional pieces");
  de_src.attach(dec);
  dec->add_option("--t", de_t, "Level of the input vector")->required();
  dec->add_option("--k", de_k, "Vanishing threshold")->required();
  dec->add_option("--point", de_point, "Moment vector JSON")->required();
  dec->add_option("--S", de_s, "Set S, e.g. [0,2] (default: big items for k = t-1)");

  InstanceSource ve_src;
  int ve_t = 0;
  std::string ve_point;
  std::string ve_mode = "lasserre";
  bool ve_emit = false;
  auto* ver = app.add_subcommand("verify", "Check a moment vector against a lifted polytope");
  ve_src.attach(ver);
  ver->add_option("--point", ve_point, "Moment vector JSON")->required();
  ver->add_option("--t", ve_t, "Level")->required();
  ver->add_option("--mode", ve_mode, "sa or lasserre")->check(CLI::IsMember({"sa", "lasserre"}));
  ver->add_flag("--emit-violations", ve_emit, "Include offending matrices");

  std::string sw_config;
  std::optional<std::string> sw_output;
  std::optional<double> sw_tol;
  bool sw_symmetry = false;
  bool sw_timing = false;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of experiments and emit CSV");
  sweep->add_option("--config", sw_config, "Sweep configuration JSON")->required();
  sweep->add_option("--output", sw_output, "CSV path (overrides the config)");
  sweep->add_option("--tol", sw_tol, "Lasserre tolerance (overrides the config)");
  sweep->add_flag("--symmetry", sw_symmetry, "Use symmetric blocks where possible");
  sweep->add_flag("--timing", sw_timing, "Record wall-clock runtime_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (*seed_opt) g.seed = seed;
  omp_set_num_threads(g.threads);

  try {
    if (*sa_cert) return cmd_sa_cert(g, cert_n, cert_eps, cert_t, cert_delta, emit);
    if (*sa_val) return cmd_sa_value(g, sv_src, sv_t);
    if (*las) return cmd_lasserre(g, la_src, la_t, la_opts);
    if (*dec) return cmd_decompose(g, de_src, de_t, de_k, de_point, de_s);
    if (*ver) return cmd_verify(g, ve_src, ve_point, ve_t, ve_mode, ve_emit);
    if (*sweep) return cmd_sweep(g, sw_config, sw_output, sw_tol, sw_symmetry, sw_timing);
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const HypothesisError& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return kVerificationFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kVerificationFailed;
  }
  return kUsage;
}
