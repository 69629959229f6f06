#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ebreak/cli.hpp"
#include "ebreak/environment.hpp"
#include "ebreak/errors.hpp"
#include "ebreak/propagation.hpp"

using namespace ebreak;
using namespace ebreak::cli;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ebreak");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const std::vector<std::string>* find_row(const std::vector<std::vector<std::string>>& rows, const std::string& g,
                                         const std::string& gp) {
  for (const auto& r : rows)
    if (r.size() >= 2 && r[0] == g && r[1] == gp) return &r;
  return nullptr;
}

}  // namespace

TEST(Csv, Formatting) {
  Table t;
  t.columns = {"x", "name", "flag"};
  t.rows.push_back({1.0 / 3.0, std::string("S"), true});
  t.rows.push_back({-0.0, std::string("none"), false});
  t.rows.push_back({std::nan(""), std::string("F"), false});
  EXPECT_EQ(to_csv(t), "x,name,flag\n0.333333333333,S,1\n0,none,0\nnan,F,0\n");
}

TEST(Json, ColumnsMirrorTable) {
  Table t;
  t.columns = {"a", "b"};
  t.rows.push_back({1.5, std::string("E")});
  const auto doc = table_to_json(t, {{"command", "x"}});
  EXPECT_EQ(doc["config"]["command"], "x");
  EXPECT_EQ(doc["columns"]["a"][0], 1.5);
  EXPECT_EQ(doc["columns"]["b"][0], "E");
}

TEST(ScanConfigTest, Validation) {
  ScanConfig c;
  c.tau = 0.5;
  c.grid_n = 1;
  EXPECT_THROW(validate(c), UsageError);
  c.grid_n = 4002;
  EXPECT_THROW(validate(c), UsageError);
  c.grid_n = 4001;
  EXPECT_NO_THROW(validate(c));
  c.range = Range{0.0, INFINITY, 0.0, 1.0};
  EXPECT_THROW(validate(c), UsageError);
}

TEST(ScanConfigTest, OmegaEbAndAutoRange) {
  ScanConfig c;
  c.tau = 0.9;
  c.omega_eb = true;
  EXPECT_EQ(c.omega(), 19.0);
  const Range r = c.resolved_range();
  EXPECT_EQ(r.g_min, -19.0);
  EXPECT_EQ(r.gp_max, 19.0);
}

TEST(EnvMap, OmegaTwoGeometry) {
  const CliRun r = run({"env-map", "--omega", "2", "--grid", "41"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 41 * 41);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"g", "g_prime", "class"}));
  EXPECT_EQ((*find_row(rows, "0", "0"))[2], "S");
  EXPECT_EQ((*find_row(rows, "1.7", "-1.7"))[2], "E");
  EXPECT_EQ((*find_row(rows, "1.8", "-1.8"))[2], "F");
  EXPECT_EQ((*find_row(rows, "1.5", "1.5"))[2], "F");
}

TEST(EnvMap, ClassesMatchLibrary) {
  ScanConfig c;
  c.omega_value = 5.0;
  c.grid_n = 61;
  const Table t = env_map(c);
  for (const auto& row : t.rows) {
    const double g = std::get<double>(row[0]), gp = std::get<double>(row[1]);
    const char expected = environment::class_code(environment::classify({0.0, 5.0, g, gp}));
    ASSERT_EQ(std::get<std::string>(row[2]), std::string(1, expected));
  }
}

TEST(ReactivationMap, Examples) {
  const CliRun low = run({"reactivation-map", "--tau", "0.3", "--grid", "11"});
  ASSERT_EQ(low.code, 0) << low.err;
  const auto origin = *find_row(parse_csv(low.out), "0", "0");
  EXPECT_EQ(origin[3], "1.3");
  EXPECT_EQ(origin[4], "0");

  const CliRun high = run({"reactivation-map", "--tau", "0.9", "--omega", "eb", "--grid", "39"});
  ASSERT_EQ(high.code, 0) << high.err;
  const auto rows = parse_csv(high.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"g", "g_prime", "class", "eps", "reactivated", "distillable"}));
  const auto mac = *find_row(rows, "18", "-18");
  EXPECT_EQ(mac[3], "0.1");
  EXPECT_EQ(mac[4], "1");
  EXPECT_EQ(mac[5], "1");
  int sep_and_distillable = 0;
  for (const auto& row : rows)
    if (row[2] == "S" && row[5] == "1") ++sep_and_distillable;
  EXPECT_GT(sep_and_distillable, 0);
}

TEST(ReactivationMap, EprPointAtThreeQuarters) {
  ScanConfig c;
  c.tau = 0.75;
  c.omega_eb = true;
  const double g = std::sqrt(c.omega() * c.omega() - 1.0);
  c.grid_n = 2;
  c.range = Range{g, g + 1e-9, -g, -g + 1e-9};
  const Table t = reactivation_map(c);
  const auto& row = t.rows[0];
  EXPECT_NEAR(std::get<double>(row[3]), 0.0179491924311227065, 1e-12);
  EXPECT_TRUE(std::get<bool>(row[4]));
}

TEST(ReactivationMap, SampledCellsAgreeWithFiniteMu) {
  ScanConfig c;
  c.tau = 0.9;
  c.omega_eb = true;
  c.grid_n = 101;
  const Table t = reactivation_map(c);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, t.rows.size() - 1);
  int checked = 0;
  for (int k = 0; k < 200 && checked < 100; ++k) {
    const auto& row = t.rows[pick(rng)];
    if (std::get<std::string>(row[2]) == "F") {
      EXPECT_TRUE(std::isnan(std::get<double>(row[3])));
      continue;
    }
    ++checked;
    const propagation::EnvSpec e{0.9, 19.0, std::get<double>(row[0]), std::get<double>(row[1])};
    const double exact = propagation::exact_report(propagation::EprInput(1e6), e).eps;
    EXPECT_NEAR(std::get<double>(row[3]), exact, 1e-2);
  }
  EXPECT_GT(checked, 50);
}

TEST(Thresholds, Rows) {
  const CliRun r = run({"thresholds", "--family", "ac", "--tau-grid", "0.15,0.9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"tau", "omega_eb", "g_er", "g_ed", "g_max_sep", "g_max_phys"}));
  EXPECT_EQ(rows[1][3], "none");
  EXPECT_EQ(rows[2], (std::vector<std::string>{"0.9", "19", "9", "15.3212055883", "18", "18.973665961"}));

  const CliRun sc = run({"thresholds", "--family", "sc", "--tau-grid", "0.95:0.97:0.02"});
  ASSERT_EQ(sc.code, 0) << sc.err;
  const auto sc_rows = parse_csv(sc.out);
  ASSERT_EQ(sc_rows.size(), 3u);
  EXPECT_EQ(sc_rows[1][3], "none");
  EXPECT_NE(sc_rows[2][3], "none");
}

TEST(Curves, ScNinetyPercent) {
  const Table t = correlation_curves(environment::Family::SC, 0.9, 19);
  ASSERT_EQ(t.columns, (std::vector<std::string>{"kind", "g", "eps", "N_ebits", "C_cbits", "D_dbits", "I_bits"}));
  const auto& first = t.rows.front();
  EXPECT_EQ(std::get<double>(first[1]), 0.0);
  EXPECT_EQ(std::get<double>(first[4]), 0.0);
  EXPECT_EQ(std::get<double>(first[5]), 0.0);
  const auto& end = t.rows[t.rows.size() - 2];
  EXPECT_DOUBLE_EQ(std::get<double>(end[1]), 18.0);
  EXPECT_NEAR(std::get<double>(end[3]), -std::log2(std::sqrt(0.37)), 1e-12);
  const auto& crit = t.rows.back();
  EXPECT_EQ(std::get<std::string>(crit[0]), "critical");
  EXPECT_NEAR(std::get<double>(crit[2]), 1.0, 1e-9);
  EXPECT_LT(std::get<double>(crit[6]), 2.0);
}

TEST(Curves, AcThresholdPoint) {
  const Table t = correlation_curves(environment::Family::AC, 0.9, 101);
  const auto& crit = t.rows.back();
  EXPECT_EQ(std::get<std::string>(crit[0]), "critical");
  EXPECT_NEAR(std::get<double>(crit[1]), 9.0, 1e-12);
  EXPECT_NEAR(std::get<double>(crit[2]), 1.0, 1e-12);
}

TEST(Discord, EnvironmentAndFile) {
  const CliRun env = run({"discord", "--omega", "2", "--g", "1", "--gp", "1"});
  ASSERT_EQ(env.code, 0) << env.err;
  const auto rows = parse_csv(env.out);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.295739585136, 1e-7);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.459147917027, 1e-7);

  const auto path = std::filesystem::temp_directory_path() / "ebreak_cli_test_cm.txt";
  {
    std::ofstream f(path);
    f << "# SC environment\n2 0 1 0\n0 2 0 1\n1 0 2 0\n0 1 0 2\n";
  }
  const CliRun file = run({"discord", "--cm", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(file.code, 0) << file.err;
  EXPECT_EQ(parse_csv(file.out)[1], rows[1]);
}

TEST(EprVariancesCmd, AcSweep) {
  const CliRun r = run({"epr-variances", "--tau", "0.9", "--family", "ac", "--grid", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1][4], "0");
  EXPECT_EQ(rows[5][4], "1");
}

TEST(Qudit, WernerTwirlDesign) {
  const CliRun r = run({"qudit", "werner", "--d", "2", "--gamma", "0.5", "twirl", "--mode", "uu", "--method", "design"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["fixed_point"].get<bool>());
  EXPECT_LT(j["max_deviation"].get<double>(), 1e-12);
}

TEST(Qudit, Depolarize) {
  const CliRun r = run({"qudit", "depolarize", "--p", "0.6,0.2,0.1,0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j["EB"].get<bool>());
  EXPECT_NEAR(j["minPT"].get<double>(), -0.1, 1e-12);
}

TEST(Qudit, DephaseAndDilation) {
  const CliRun d = run({"qudit", "dephase", "--d", "5", "--seed", "7"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(json::parse(d.out)["PPT"].get<bool>());
  const CliRun c = run({"qudit", "dilate-check", "--clifford", "uu"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["controls"], 24);
  const CliRun p = run({"qudit", "dilate-check", "--p", "0.5,0.1666666666666667,0.1666666666666667,0.1666666666666666"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(json::parse(p.out)["basis_operators"], 16);
}

TEST(Qudit, HaarAverage) {
  const CliRun r = run({"qudit", "haar-average", "--da", "2", "--db", "3", "--samples", "20000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(json::parse(r.out)["pass"].get<bool>());
}

TEST(ExitCodes, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"env-map", "--grid", "1"}).code, 2);
  EXPECT_EQ(run({"env-map", "--grid", "5000"}).code, 2);
  EXPECT_EQ(run({"env-map", "--omega", "abc"}).code, 2);
  EXPECT_EQ(run({"reactivation-map", "--tau", "1.5"}).code, 2);
  EXPECT_EQ(run({"thresholds", "--family", "xx"}).code, 2);
  EXPECT_EQ(run({"qudit", "depolarize", "--p", "0.5,0.5,0.5,0.5"}).code, 2);
  EXPECT_EQ(run({"qudit", "werner", "--d", "3", "--mu", "-1", "twirl", "--method", "design"}).code, 2);
  EXPECT_EQ(run({"env-map", "--help"}).code, 0);
}

TEST(Output, JsonFormatAndPrintConfig) {
  const CliRun r = run({"env-map", "--omega", "2", "--grid", "3", "--format", "json", "--print-config"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["config"]["grid_n"], 3);
  EXPECT_EQ(j["columns"]["class"].size(), 9u);
  EXPECT_NE(r.err.find("grid_n"), std::string::npos);
}

TEST(Output, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "ebreak_cli_test_out.csv";
  const CliRun r = run({"env-map", "--grid", "5", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::filesystem::remove(path);
  EXPECT_EQ(ss.str(), run({"env-map", "--grid", "5"}).out);
}

TEST(Determinism, IndependentOfWorkerCount) {
  const std::vector<std::string> map = {"reactivation-map", "--tau", "0.9", "--grid", "151"};
  const std::vector<std::string> haar = {"qudit", "werner", "--d", "3", "--mu", "-0.5", "twirl",
                                         "--method", "haar", "--samples", "4000", "--seed", "9"};
  setenv("EBREAK_THREADS", "1", 1);
  const std::string map1 = run(map).out, haar1 = run(haar).out;
  setenv("EBREAK_THREADS", "7", 1);
  const std::string map7 = run(map).out, haar7 = run(haar).out;
  unsetenv("EBREAK_THREADS");
  EXPECT_EQ(map1, map7);
  EXPECT_EQ(haar1, haar7);
  EXPECT_EQ(map1, run(map).out);
}
