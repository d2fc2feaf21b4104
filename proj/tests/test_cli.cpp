#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#ifndef COLREP_CLI
#error "COLREP_CLI must name the colrep executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;  // stdout and stderr
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + COLREP_CLI + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path dir() {
  auto d = fs::temp_directory_path() / "colrep_test_cli";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST(Cli, ConstructExampleOne) {
  const auto out = dir() / "ex1_5.json";
  const auto r = run("construct example1 --p 5 --out " + q(out));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("25x125 mu=0.200000 welch=0.179605 ratio=1.114"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("rip_kmax=6"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(out));
}

TEST(Cli, RejectsNonPrime) {
  const auto r = run("construct example1 --p 4 --out " + q(dir() / "x.json"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("4 is not prime"), std::string::npos) << r.out;
}

TEST(Cli, UnknownFlag) {
  const auto r = run("construct example1 --p 3 --bogus 1 --out " + q(dir() / "x.json"));
  EXPECT_EQ(r.status, 2) << r.out;
}

TEST(Cli, ExampleThreeAndCsv) {
  const auto out = dir() / "ex3.csv";
  const auto r = run("construct example3 --q 4 --k 2 --format csv --out " + q(out));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("8x16 mu=0.500000"), std::string::npos) << r.out;
  const auto text = slurp(out);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 8);
}

TEST(Cli, AnalyzeOneColumnFails) {
  const auto in = dir() / "one.json";
  std::ofstream(in) << R"({"format_version":1,"m":2,"n":1,"entries":[[1,0],[0,0]]})";
  const auto r = run("analyze " + q(in));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("need >= 2 columns"), std::string::npos) << r.out;
}

TEST(Cli, AnalyzeMalformed) {
  const auto in = dir() / "bad.json";
  std::ofstream(in) << "{\"m\": 2,,}";
  const auto r = run("analyze " + q(in));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("error: parse"), std::string::npos) << r.out;
}

TEST(Cli, ResizeAndCompare) {
  const auto a = dir() / "ex1_3.json";
  ASSERT_EQ(run("construct example1 --p 3 --out " + q(a)).status, 0);
  auto r = run("resize kronecker --a " + q(a) + " --b " + q(a) + " --out " + q(dir() / "kr.json"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("81x729 mu=0.333333"), std::string::npos) << r.out;

  r = run("resize column-replacement --a " + q(a) + " --rs2-rows 3 --out " + q(dir() / "cr.json") + " --report " +
          q(dir() / "cr_report.json"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("27x729"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("d_P=1 bound=0.555556"), std::string::npos) << r.out;

  r = run("compare --p 5");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("column_replacement=0.360000 kronecker=0.439941 winner=column_replacement"), std::string::npos)
      << r.out;
}

TEST(Cli, ConstructIsByteDeterministic) {
  const auto a = dir() / "g1.json", b = dir() / "g2.json";
  ASSERT_EQ(run("construct gaussian --m 9 --n 27 --seed 5 --out " + q(a)).status, 0);
  ASSERT_EQ(run("construct gaussian --m 9 --n 27 --seed 5 --out " + q(b)).status, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, SimulateTwiceIdentical) {
  const auto cfg = dir() / "sim.json";
  std::ofstream(cfg) << R"({"trials": 40, "seed": 3,
    "matrices": [{"name": "ex1", "construction": "example1", "p": 3}],
    "scenarios": [{"name": "s", "type": "sparsity", "sparsity": {"from": 1, "to": 4}},
                  {"name": "n", "type": "snr", "k": 2, "snr_db": {"from": 0, "to": 30, "step": 10}}]})";
  const auto d1 = dir() / "sim_a", d2 = dir() / "sim_b";
  ASSERT_EQ(run("simulate " + q(cfg) + " --out-dir " + q(d1)).status, 0);
  ASSERT_EQ(run("--threads 1 simulate " + q(cfg) + " --out-dir " + q(d2)).status, 0);
  for (const char* f : {"s__ex1.csv", "n__ex1.csv", "summary.json"}) EXPECT_EQ(slurp(d1 / f), slurp(d2 / f)) << f;
  EXPECT_EQ(slurp(d1 / "s__ex1.csv").rfind("x_axis_value,recovery_pct,mean_output_snr_db,trials\n", 0), 0u);
}

TEST(Cli, SimulateEmptyRange) {
  const auto cfg = dir() / "empty.json";
  std::ofstream(cfg) << R"({"matrices": [{"name": "a", "construction": "example1", "p": 3}],
    "scenarios": [{"type": "sparsity", "sparsity": {"from": 3, "to": 1}}]})";
  const auto r = run("simulate " + q(cfg) + " --out-dir " + q(dir() / "sim_empty"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("empty"), std::string::npos) << r.out;
}
