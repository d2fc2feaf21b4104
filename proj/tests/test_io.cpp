#include <gtest/gtest.h>

#include <filesystem>

#include "colrep/colrep.hpp"

using namespace colrep;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "colrep_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Io, MatrixRoundTrip) {
  const auto A = construct_example2(3);
  const auto text = io::serialize(A);
  const auto B = io::parse_matrix(text);
  EXPECT_EQ(A.entries(), B.entries());
  EXPECT_EQ(B.provenance().construction, "example2");
  EXPECT_EQ(*B.provenance().p, 3);
  EXPECT_EQ(*B.claimed_coherence(), 0.5);
  EXPECT_EQ(io::serialize(B), text);
}

TEST(Io, SaveIsByteDeterministic) {
  const auto a = scratch("a.json"), b = scratch("b.json");
  io::save_matrix(construct_example1(3), a.string());
  io::save_matrix(construct_example1(3), b.string());
  EXPECT_EQ(io::detail::read_file(a.string()), io::detail::read_file(b.string()));
  EXPECT_EQ(io::load_matrix(a.string()).entries(), construct_example1(3).entries());
}

TEST(Io, MatrixJsonLayout) {
  ComplexMatrix M(1, 2);
  M << std::complex<double>(0.5, -0.25), std::complex<double>(1, 0);
  const auto j = io::to_json(SensingMatrix(M, Provenance{std::nullopt, "manual", {}}));
  EXPECT_EQ(j["format_version"], 1);
  EXPECT_EQ(j["m"], 1);
  EXPECT_EQ(j["n"], 2);
  EXPECT_TRUE(j["p"].is_null());
  EXPECT_EQ(j["entries"][0][0], 0.5);
  EXPECT_EQ(j["entries"][0][1], -0.25);
}

TEST(Io, Csv) {
  ComplexMatrix M(2, 2);
  M << std::complex<double>(0.5, -0.25), std::complex<double>(1, 0), std::complex<double>(0, 2), -1.0;
  EXPECT_EQ(io::to_csv(SensingMatrix(M, {})), "0.5-0.25j,1+0j\n0+2j,-1+0j\n");
}

TEST(Io, ParseErrors) {
  try {
    io::parse_matrix("{\n  \"m\": 1,\n  oops\n}");
    FAIL() << "expected a parse error";
  } catch (const parse_error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("byte offset"), std::string::npos) << msg;
  }
  EXPECT_THROW(io::parse_matrix(R"({"format_version": 1, "m": 1, "n": 2, "entries": [[1, 0]]})"), parse_error);
  EXPECT_THROW(io::parse_matrix(R"({"format_version": 2, "m": 1, "n": 1, "entries": [[1, 0]]})"), parse_error);
  EXPECT_THROW(io::parse_matrix(R"({"format_version": 1, "n": 1, "entries": [[1, 0]]})"), parse_error);
  EXPECT_THROW(io::parse_matrix(R"({"format_version": 1, "m": 1, "n": 1, "entries": [1]})"), parse_error);
  EXPECT_THROW(io::load_matrix(scratch("missing.json").string()), error);
}

TEST(Io, PatternRoundTrip) {
  const auto cb = enumerate_codewords(rs2_generator(FieldSpec::make(3, 2), first_points(3)));
  const auto P = PatternMatrix::from_codebook(cb);
  const auto Q = io::pattern_from_json(io::to_json(P));
  EXPECT_EQ(P.entries(), Q.entries());
  EXPECT_EQ(Q.alphabet_size(), 9u);
  EXPECT_THROW(io::pattern_from_json(nlohmann::json::parse(R"({"alphabet_size": 2, "entries": [[0, 2]]})")), index_error);
  EXPECT_THROW(io::pattern_from_json(nlohmann::json::parse(R"({"alphabet_size": 2, "entries": [[0, -1]]})")), parse_error);
  EXPECT_THROW(io::pattern_from_json(nlohmann::json::parse(R"({"alphabet_size": 2, "entries": [[0], [0, 1]]})")), parse_error);
}

TEST(Io, ExperimentCsv) {
  ExperimentResult r{"sparsity", {}, {{1, 100, 300, 500, 42}, {2, 99.8, 287.5, 500, 42}}};
  EXPECT_EQ(io::to_csv(r), "x_axis_value,recovery_pct,mean_output_snr_db,trials\n1,100,300,500\n2,99.8,287.5,500\n");
}

TEST(Io, ReportJson) {
  const auto rep = analyze(construct_example1(3));
  const auto j = io::to_json(rep);
  EXPECT_NEAR(j["coherence"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(j["method"], "full");
  EXPECT_EQ(j["pairs"], 351);
  const auto r = io::to_json(rip_estimate(0.0));
  EXPECT_EQ(r["k_max"], "unbounded");
}

TEST(Simulation, ParseConfig) {
  const auto cfg = sim::parse_config(nlohmann::json::parse(R"({
    "trials": 20, "seed": 7,
    "matrices": [{"name": "ex1", "construction": "example1", "p": 3}],
    "scenarios": [
      {"name": "s", "type": "sparsity", "sparsity": {"from": 1, "to": 3}},
      {"name": "n", "type": "snr", "k": 2, "snr_db": [0, 10, 20]}
    ]})"));
  ASSERT_EQ(cfg.scenarios.size(), 2u);
  EXPECT_EQ(cfg.scenarios[0].config.sparsities, (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(cfg.scenarios[0].config.input_snr_db);
  EXPECT_EQ(cfg.scenarios[1].config.snr_grid_db, (std::vector<double>{0, 10, 20}));
  EXPECT_EQ(cfg.scenarios[1].config.trials, 20u);
  EXPECT_EQ(cfg.seed, 7u);
}

TEST(Simulation, ConfigErrors) {
  auto bad = [](const char* text) { return sim::parse_config(nlohmann::json::parse(text)); };
  EXPECT_THROW(bad(R"({"matrices": [{"name": "a", "construction": "example1", "p": 3}],
                       "scenarios": [{"type": "sparsity", "sparsity": {"from": 5, "to": 1}}]})"),
               config_error);
  EXPECT_THROW(bad(R"({"matrices": [{"name": "a", "construction": "example1", "p": 3}],
                       "scenarios": [{"type": "sparsity", "sparsity": []}]})"),
               config_error);
  EXPECT_THROW(bad(R"({"bogus": 1, "matrices": [], "scenarios": []})"), config_error);
  EXPECT_THROW(bad(R"({"matrices": [{"name": "a", "construction": "example1", "p": 3, "extra": 1}],
                       "scenarios": [{"type": "snr", "k": 1, "snr_db": [0]}]})"),
               config_error);
  EXPECT_THROW(bad(R"({"matrices": [{"name": "a", "construction": "example1", "p": 3}],
                       "scenarios": [{"type": "other"}]})"),
               config_error);
}

TEST(Simulation, RunIsDeterministic) {
  const auto cfg = sim::parse_config(nlohmann::json::parse(R"({
    "trials": 30,
    "matrices": [{"name": "ex1", "construction": "example1", "p": 3},
                 {"name": "g", "construction": "gaussian", "m": 9, "n": 27}],
    "scenarios": [{"name": "s", "type": "sparsity", "sparsity": [1, 2, 3], "input_snr_db": 30}]})"));
  const auto d1 = scratch("sim1"), d2 = scratch("sim2");
  const auto o1 = sim::run(cfg, d1);
  const auto o2 = sim::run(cfg, d2);
  ASSERT_EQ(o1.csv_files.size(), 2u);
  EXPECT_EQ(o1.csv_files[0].filename(), "s__ex1.csv");
  for (std::size_t i = 0; i < o1.csv_files.size(); ++i)
    EXPECT_EQ(io::detail::read_file(o1.csv_files[i].string()), io::detail::read_file(o2.csv_files[i].string()));
  EXPECT_EQ(io::detail::read_file(o1.summary.string()), io::detail::read_file(o2.summary.string()));
}
