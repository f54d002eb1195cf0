#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sliderule/sheet.hpp"

namespace fs = std::filesystem;
using sliderule::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sliderule_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(Cli, Compute) {
  auto r = cli({"compute", "replus", "3", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\n");
  r = cli({"compute", "quadratic_solver", "5", "6"});
  EXPECT_EQ(r.out, "0.5\nroots: -2 -3\n");
  r = cli({"compute", "multiplication", "3", "2", "--resolution", "0.1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(exact 6, rel_err "), std::string::npos);
  r = cli({"compute", "power", "3", "4", "--param", "alpha=2"});
  EXPECT_EQ(r.out, "5\n");
}

TEST(Cli, ComputeErrors) {
  auto r = cli({"compute", "quadplus", "20", "20"});
  EXPECT_EQ(r.code, sliderule::cli::kOffScale);
  EXPECT_NE(r.err.find("OffScale"), std::string::npos);
  r = cli({"compute", "quadplus", "3", "99"});
  EXPECT_EQ(r.code, sliderule::cli::kValidation);
  EXPECT_NE(r.err.find("DomainError"), std::string::npos);
  r = cli({"compute", "nope", "1", "2"});
  EXPECT_EQ(r.code, sliderule::cli::kValidation);
  EXPECT_NE(r.err.find("UnknownEntry"), std::string::npos);
  r = cli({"compute", "power", "3", "4", "--param", "alpha"});
  EXPECT_EQ(r.code, sliderule::cli::kUsage);
  r = cli({"compute", "replus", "3"});
  EXPECT_EQ(r.code, sliderule::cli::kUsage);
}

TEST(Cli, ChainAndMean) {
  EXPECT_EQ(cli({"chain", "quadplus", "1", "2", "2"}).out, "3\n");
  EXPECT_EQ(cli({"chain", "replus", "2", "8", "--mean"}).out, "3.2\n");
  EXPECT_EQ(cli({"chain", "replus", "2", "8", "--mean", "-1"}).out, "3.2\n");
  auto r = cli({"chain", "product_xy", "2", "3"});
  EXPECT_EQ(r.code, sliderule::cli::kValidation);
  EXPECT_NE(r.err.find("ChainUnsupported"), std::string::npos);
  r = cli({"chain", "quadplus", "15", "15", "15"});
  EXPECT_EQ(r.code, sliderule::cli::kOffScale);
  EXPECT_NE(r.err.find("step 1"), std::string::npos);
}

TEST(Cli, ListAndUsage) {
  auto r = cli({"list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("replus"), std::string::npos);
  EXPECT_NE(r.out.find("horizon"), std::string::npos);
  EXPECT_EQ(cli({}).code, sliderule::cli::kUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, sliderule::cli::kUsage);
  r = cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("compile"), std::string::npos);
}

TEST_F(CliFiles, CompileExportRender) {
  auto rules = write("r.sr", "param R = 2\nscale s(x) = R*x^2 on [0, 10]\nscale d(z) = R*z^2 on [0, 20]\n"
                             "rule q: F=d f=s g=s op=+\n");
  auto r = cli({"compile", rules, "--validate-only"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "ok: 1 rule(s)\n");

  auto sheet = path("q.json");
  EXPECT_EQ(cli({"compile", rules, "-o", sheet}).code, 0);
  std::ifstream in(sheet);
  std::string json((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(sliderule::parse_sheet(json).rules.at(0).name, "q");

  r = cli({"compute", "q", "3", "4", "--from", rules});
  EXPECT_EQ(r.out, "5\n");
  r = cli({"compute", "q", "3", "4", "--from", sheet});
  EXPECT_EQ(r.out, "5\n");

  r = cli({"render", sheet});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("data-rule=\"q\""), std::string::npos);
  EXPECT_EQ(cli({"render", rules}).out, r.out);

  r = cli({"export", "replus", "quadplus"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(sliderule::parse_sheet(r.out).rules.size(), 2u);
  EXPECT_EQ(cli({"render"}).out, cli({"render", "--rule", "replus", "--rule", "quadplus"}).out);
}

TEST_F(CliFiles, CompileErrors) {
  auto bad = write("bad.sr", "scale s(x) = x + on [0, 1]\n");
  auto r = cli({"compile", bad});
  EXPECT_EQ(r.code, sliderule::cli::kInputError);
  EXPECT_NE(r.err.find(bad + ":1:"), std::string::npos);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);

  auto sem = write("sem.sr", "scale s(x) = sin(x) on [0, 4]\n");
  r = cli({"compile", sem});
  EXPECT_EQ(r.code, sliderule::cli::kValidation);
  EXPECT_NE(r.err.find(sem + ":1:"), std::string::npos);
  EXPECT_NE(r.err.find("NotMonotone"), std::string::npos);

  r = cli({"compile", path("missing.sr")});
  EXPECT_EQ(r.code, sliderule::cli::kInputError);
  EXPECT_NE(r.err.find("IoError"), std::string::npos);
}

TEST_F(CliFiles, Profile) {
  auto csv = path("p.csv");
  auto r = cli({"profile", "product_xy", "--grid", "10", "--x-range", "1.05", "9.5", "--y-range", "1.05", "9.5",
                "-o", csv});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("max_rel_err="), std::string::npos);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,z_exact,z_read,rel_err");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 100);
}
