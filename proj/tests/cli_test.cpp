#include "cli/commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli/format.hpp"

namespace wfdrift::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> parse_summary(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wfdrift_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(FormatTest, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 0.59999557712430229, 1e-300, -2.5}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST_F(CliTest, CsvRoundTrip) {
  fs::create_directories(dir_);
  write_csv(dir_ / "t.csv", {"a", "b"}, {{1.0, 0.1}, {2.0, 1.0 / 3.0}});
  const CsvTable t = read_csv(dir_ / "t.csv");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1][1], 1.0 / 3.0);
}

TEST_F(CliTest, SolveTableOneCase) {
  const Result r = invoke({"solve", "--scheme", "central-whole", "--cells", "1000", "--tau",
                           "1e-4", "--t-end", "6", "--p", "0.4", "--diagnostics-stride", "100",
                           "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto kv = parse_summary(r.out);
  EXPECT_NEAR(std::stod(kv.at("w0")), 0.59999558, 1e-4);
  EXPECT_NEAR(std::stod(kv.at("w1")), 0.39999558, 1e-4);
  EXPECT_EQ(kv.at("scheme"), "central-whole");
  EXPECT_TRUE(fs::exists(dir_ / "snapshot_000.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "snapshot_001.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "summary.txt"));
  const CsvTable diag = read_csv(dir_ / "diagnostics.csv");
  EXPECT_EQ(diag.header,
            (std::vector<std::string>{"t", "P", "E", "interior_mass", "v_norm", "f0", "fM"}));
  EXPECT_NEAR(diag.rows.back()[0], 6.0, 1e-9);
  const CsvTable snap = read_csv(dir_ / "snapshot_001.csv");
  EXPECT_EQ(snap.header, (std::vector<std::string>{"x", "f"}));
  ASSERT_EQ(snap.rows.size(), 1001u);
  EXPECT_NEAR(snap.rows[0][1] * 0.0005, std::stod(kv.at("w0")), 1e-15);
}

TEST_F(CliTest, SolveZeroEndTime) {
  const Result r = invoke({"solve", "--t-end", "0", "--cells", "50", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_summary(r.out).at("snapshot_count"), "1");
  EXPECT_TRUE(fs::exists(dir_ / "snapshot_000.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "snapshot_001.csv"));
}

TEST_F(CliTest, SolveSnapshotList) {
  const Result r = invoke({"solve", "--cells", "40", "--tau", "0.01", "--t-end", "0.2",
                           "--snapshots", "0,0.1,0.2", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_summary(r.out).at("snapshot_count"), "3");
}

TEST_F(CliTest, SolveUsageErrors) {
  EXPECT_EQ(invoke({"solve", "--scheme", "bogus", "--out-dir", dir_.string()}).code, kUsage);
  EXPECT_EQ(invoke({"solve", "--cells", "2", "--out-dir", dir_.string()}).code, kUsage);
  EXPECT_EQ(invoke({"solve", "--tau", "-1", "--out-dir", dir_.string()}).code, kUsage);
  EXPECT_EQ(invoke({"solve", "--p", "1.5", "--out-dir", dir_.string()}).code, kUsage);
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsage);
}

TEST_F(CliTest, SolveUnwritableOutput) {
  fs::create_directories(dir_);
  std::ofstream(dir_ / "file") << "x";
  const Result r = invoke({"solve", "--cells", "10", "--t-end", "0", "--out-dir",
                           (dir_ / "file" / "sub").string()});
  EXPECT_EQ(r.code, kIo);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, CompareIdentities) {
  for (const char* cells : {"8", "5"}) {
    const Result r = invoke({"compare", "--cells", cells, "--out", (dir_ / "c.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(slurp(dir_ / "c.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "identity,cells,samples,max_abs_deviation,max_scaled_deviation");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      std::vector<std::string> cols;
      std::istringstream ls(line);
      for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
      ASSERT_EQ(cols.size(), 5u);
      EXPECT_EQ(cols[1], cells);
      EXPECT_LE(std::stod(cols[3]), 1e-13) << cols[0];
    }
    EXPECT_EQ(rows, 2);
  }
  EXPECT_EQ(invoke({"compare", "--samples", "0"}).code, kUsage);
}

TEST_F(CliTest, ViscosityOneIsNormalized) {
  const Result r = invoke({"viscosity", "--epsilons", "0.5,1e-2,1e-4,1e-8", "--test-function",
                           "one", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable pairing = read_csv(dir_ / "pairing.csv");
  ASSERT_EQ(pairing.rows.size(), 4u);
  for (const auto& row : pairing.rows) EXPECT_NEAR(row[2], 1.0, 1e-8);
  const CsvTable prof = read_csv(dir_ / "profiles.csv");
  EXPECT_EQ(prof.rows.size(), 4u * 201u);
}

TEST_F(CliTest, ViscosityProfilesAreUShaped) {
  const Result r = invoke({"viscosity", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable prof = read_csv(dir_ / "profiles.csv");
  // Rows grouped by epsilon (0.5 then 0.01), 201 points each.
  ASSERT_EQ(prof.rows.size(), 402u);
  for (int e = 0; e < 2; ++e) {
    const auto& first = prof.rows[e * 201];
    const auto& mid = prof.rows[e * 201 + 100];
    const auto& last = prof.rows[e * 201 + 200];
    EXPECT_GT(first[2], mid[2]);
    EXPECT_EQ(first[2], last[2]);
  }
  // Deeper well for the smaller viscosity.
  EXPECT_LT(prof.rows[201 + 100][2], prof.rows[100][2]);
}

TEST_F(CliTest, ViscosityInteriorBumpDecreases) {
  const Result r = invoke({"viscosity", "--epsilons", "1e-2,1e-4,1e-6,1e-8", "--test-function",
                           "bumpmid", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const CsvTable pairing = read_csv(dir_ / "pairing.csv");
  for (std::size_t k = 1; k < pairing.rows.size(); ++k) {
    EXPECT_LT(pairing.rows[k][2], pairing.rows[k - 1][2]);
  }
  EXPECT_EQ(invoke({"viscosity", "--test-function", "nope"}).code, kUsage);
  EXPECT_EQ(invoke({"viscosity", "--epsilons", "-1", "--out-dir", dir_.string()}).code, kUsage);
}

TEST_F(CliTest, OracleDeterministicAndValidated) {
  const std::vector<std::string> args{"oracle", "--pop-size", "50", "--p", "0.4",
                                      "--trials", "2000", "--moment-draws", "10000",
                                      "--seed", "5"};
  auto a = args;
  a.insert(a.end(), {"--out", (dir_ / "a.txt").string()});
  auto b = args;
  b.insert(b.end(), {"--out", (dir_ / "b.txt").string(), "--threads", "3"});
  fs::create_directories(dir_);
  const Result ra = invoke(a);
  const Result rb = invoke(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(slurp(dir_ / "a.txt"), slurp(dir_ / "b.txt"));
  const auto kv = parse_summary(ra.out);
  EXPECT_EQ(kv.at("initial_count"), "20");
  EXPECT_NEAR(std::stod(kv.at("fixed_fraction")), 0.4, 6 * std::stod(kv.at("fixed_stderr")));

  EXPECT_EQ(invoke({"oracle", "--pop-size", "100", "--p", "0.004"}).code, kUsage);
}

}  // namespace
}  // namespace wfdrift::cli
