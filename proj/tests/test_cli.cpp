#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "liftlab/hierarchy.hpp"
#include "liftlab/json_io.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(LIFTLAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path scratch(const std::string& name, const std::string& body) {
  auto dir = std::filesystem::temp_directory_path() / "liftlab_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("sa-cert --n 20").code, 2);
  EXPECT_EQ(run("sa-cert --n 20 --eps 0.7 --t 5 --delta 0.25").code, 2);
  EXPECT_EQ(run("sa-value --t 2").code, 2);
  EXPECT_EQ(run("sa-value --instance /nonexistent.json --t 2").code, 2);
}

TEST(Cli, SaCertJson) {
  auto r = run("--json sa-cert --n 10 --eps 1/10 --t 2 --delta 0.2");
  ASSERT_EQ(r.code, 0);
  auto j = liftlab::Json::parse(r.out);
  EXPECT_EQ(j["value"], "180/109");
  EXPECT_EQ(j["report"]["accepted"], true);
  EXPECT_EQ(j["bound_ok"], true);
}

TEST(Cli, SaValueOnInstanceFile) {
  auto inst = scratch("pair.json", R"({"n": 2, "capacity": "2", "items": [{"size": "1", "value": "3"}, {"size": "2", "value": "2"}]})");
  auto r = run("--json sa-value --instance " + inst.string() + " --t 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(liftlab::Json::parse(r.out)["value"], "4");
}

TEST(Cli, VerifyExitCodes) {
  using namespace liftlab;
  auto uni = uniform_gap_instance(4, parse_rational("1/4"));
  auto inst = scratch("uni4.json", instance_to_json(uni).dump());
  auto a = integer_to_moment(uni, {SubsetKey::of({0})}, 2);
  auto b = integer_to_moment(uni, {SubsetKey::of({1})}, 2);
  auto mix = convex_combination({{Rational(1, 2), a}, {Rational(1, 2), b}}).y;
  SetVector ones(level_family(4, 2));
  ones.set(SubsetKey(), 1);
  for (int i = 0; i < 4; ++i) ones.set(SubsetKey::singleton(i), 1);
  auto good = scratch("good.json", point_to_json(mix).dump());
  auto bad = scratch("bad.json", point_to_json(ones).dump());
  auto partial = scratch("partial.json", R"({"[]": "1", "[0]": "1/2"})");
  const std::string base = "verify --instance " + inst.string() + " --point ";
  EXPECT_EQ(run(base + good.string() + " --t 2 --mode sa").code, 0);
  EXPECT_EQ(run(base + bad.string() + " --t 2 --mode sa").code, 1);
  EXPECT_EQ(run(base + good.string() + " --t 1 --mode lasserre").code, 0);
  EXPECT_EQ(run(base + bad.string() + " --t 1 --mode lasserre").code, 1);
  EXPECT_EQ(run(base + partial.string() + " --t 2 --mode sa").code, 2);
}

TEST(Cli, DecomposeMixture) {
  auto inst = scratch("two.json", R"({"n": 2, "capacity": "1", "items": [{"size": "1", "value": "1"}, {"size": "1", "value": "1"}]})");
  auto point = scratch("mix.json", R"({"[]": "1", "[0]": "1/3", "[1]": "2/3", "[0,1]": "0"})");
  auto ok = run("--json decompose --instance " + inst.string() + " --point " + point.string() + " --t 3 --k 2 --S [0,1]");
  ASSERT_EQ(ok.code, 0);
  auto j = liftlab::Json::parse(ok.out);
  ASSERT_EQ(j["parts"].size(), 2u);
  EXPECT_EQ(j["parts"][0]["weight"], "1/3");
  auto fails = run("decompose --instance " + inst.string() + " --point " + point.string() + " --t 2 --k 1 --S [0,1]");
  EXPECT_EQ(fails.code, 1);
}

TEST(Cli, SweepWritesCsv) {
  auto out = std::filesystem::temp_directory_path() / "liftlab_cli_test" / "sweep.csv";
  auto cfg = scratch("sweep.json", R"({"n": 10, "eps": "1/10", "t": [2, 3], "modes": ["sa-cert"], "output": ")" +
                                       out.generic_string() + "\"}");
  ASSERT_EQ(run("sweep --config " + cfg.string()).code, 0);
  std::ifstream in(out, std::ios::binary);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "instance,n,eps,t,mode,value,ratio,status,runtime_ms");
  auto bad = scratch("bad_sweep.json", R"({"n": 10, "eps": "1/10", "t": [], "modes": ["sa-cert"]})");
  EXPECT_EQ(run("sweep --config " + bad.string()).code, 2);
}

}  // namespace
