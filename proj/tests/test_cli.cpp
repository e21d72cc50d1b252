#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nielsen/cli.hpp"
#include "support.hpp"

using namespace nielsen;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(CliExamples, ClassifyGeneratorPair) {
  auto r = run({"classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "1", "--f2", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "case 2"));
  EXPECT_TRUE(contains(r.out, "N#=0 MCC=1 MC=1"));
  EXPECT_TRUE(contains(r.out, "1*w6"));
  EXPECT_TRUE(r.err.empty());
}

TEST(CliExamples, SelfGeneratorIsLooseOnlyUpstairs) {
  auto r = run({"self", "--K", "R", "--m", "11", "--nprime", "6", "--f", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "loose; NOT by small deformation; omega#=0"));
  EXPECT_TRUE(contains(r.out, "OMEGA#-BLIND"));
}

TEST(CliExamples, SpaceFormOddSphere) {
  auto r = run({"spaceform", "--order", "5", "--n", "3", "--homotopic", "false"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "N#=MCC=5"));
}

TEST(CliRender, RowOneText) {
  auto r = run({"classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "2", "--f2", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "ker ∂_K"));
  EXPECT_TRUE(contains(r.out, "0 0 0"));
}

TEST(CliRender, MachineModeSpellsInfinity) {
  auto r = run({"--output", "machine", "classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "1", "--f2", "0"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["case_id"], 5);
  EXPECT_EQ(j["nielsen"], 2);
  EXPECT_EQ(j["mc"], "inf");
  EXPECT_EQ(j["db_version"], "v1 default-2026.10");
  EXPECT_TRUE(j["flags"].contains("omega_sharp_zero"));
  // Global options are accepted after the subcommand too.
  auto late = run({"classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "1", "--f2", "0", "--output", "machine"});
  EXPECT_EQ(late.out, r.out);
}

TEST(CliRender, MachineOutputRoundTrips) {
  auto r = run({"--output", "machine", "classify", "--K", "C", "--m", "5", "--nprime", "2", "--f1", "1", "--f2", "0"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  std::string version;
  auto a = answer_from_json(j, &version);
  auto direct = classify_projective(testing_support::shipped_db(),
                                    make_projective_class(testing_support::shipped_db(), Field::C, 5, 2, {1}),
                                    make_projective_class(testing_support::shipped_db(), Field::C, 5, 2, {0}));
  EXPECT_EQ(a, direct);
  EXPECT_EQ(version, "v1 default-2026.10");

  auto s = run({"--output", "machine", "self", "--K", "R", "--m", "11", "--nprime", "6", "--f", "3"});
  ASSERT_EQ(s.code, 0);
  auto v = verdict_from_json(Json::parse(s.out));
  EXPECT_TRUE(v.gap_witness);
  EXPECT_EQ(verdict_json(v, "v1 default-2026.10").dump() + "\n", s.out);
}

TEST(CliBehaviour, Deterministic) {
  std::vector<std::string> args{"--output", "machine", "sphere", "--m", "2", "--n", "2", "--f1", "4", "--f2", "1"};
  EXPECT_EQ(run(args).out, run(args).out);
  std::vector<std::string> text{"self", "--K", "C", "--m", "5", "--nprime", "2", "--f", "1"};
  EXPECT_EQ(run(text).out, run(text).out);
}

TEST(CliBehaviour, UsageErrorsExitTwo) {
  for (std::vector<std::string> args : {
           std::vector<std::string>{},
           {"frobnicate"},
           {"classify", "--K", "X", "--m", "11", "--nprime", "6", "--f1", "1", "--f2", "1"},
           {"classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "1,2", "--f2", "1"},
           {"classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "one", "--f2", "1"},
           {"classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "1"},
           {"spaceform", "--order", "3", "--n", "2", "--homotopic", "false"},
           {"spaceform", "--order", "3", "--n", "3", "--homotopic", "maybe"},
           {"--output", "xml", "db-validate"},
       }) {
    auto r = run(args);
    EXPECT_EQ(r.code, 2) << ::testing::PrintToString(args);
    EXPECT_TRUE(r.out.empty()) << ::testing::PrintToString(args);
    EXPECT_FALSE(r.err.empty());
  }
}

TEST(CliBehaviour, InsufficientDataExitThreeNamesTheEntry) {
  auto r = run({"classify", "--K", "H", "--m", "11", "--nprime", "2", "--f1", "1", "--f2", "1"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(contains(r.err, "boundary_H@S(11),11->S(7),10"));
  auto g = run({"classify", "--K", "R", "--m", "12", "--nprime", "6", "--f1", "1", "--f2", "1"});
  EXPECT_EQ(g.code, 3);
  EXPECT_TRUE(contains(g.err, "S(6),12"));
}

TEST(CliBehaviour, DatabaseFailuresExitFour) {
  auto missing = run({"--db", "/nonexistent/x.ndb", "db-validate"});
  EXPECT_EQ(missing.code, 4);
  EXPECT_TRUE(missing.out.empty());

  std::string text = testing_support::shipped_text();
  text.replace(text.find("= 0 [2] gens nu5eta8"), 20, "= 0 [4,2] gens nu5eta8 x");
  auto bad = write_temp("nielsen_cli_bad.ndb", text);
  auto v = run({"--db", bad.string(), "db-validate"});
  EXPECT_EQ(v.code, 4);
  EXPECT_TRUE(v.out.empty());
  EXPECT_TRUE(contains(v.err, "group S(5),10"));
  auto c = run({"--db", bad.string(), "classify", "--K", "R", "--m", "11", "--nprime", "6", "--f1", "1", "--f2", "1"});
  EXPECT_EQ(c.code, 4);
  EXPECT_TRUE(c.out.empty());

  auto garbled = write_temp("nielsen_cli_garbled.ndb", "nielsendb v1 x\nnonsense\n");
  EXPECT_EQ(run({"--db", garbled.string(), "db-show"}).code, 4);
}

TEST(CliBehaviour, ValidateAndShowShippedDatabase) {
  auto v = run({"db-validate"});
  EXPECT_EQ(v.code, 0);
  EXPECT_TRUE(contains(v.out, "OK v1 default-2026.10"));
  auto s = run({"db-show"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(Database::load_text(s.out), testing_support::shipped_db());
}

TEST(CliBehaviour, EnvironmentVariableSelectsDatabase) {
  auto alt = write_temp("nielsen_cli_env.ndb", "nielsendb v1 envtest\ngroup S(2) 2 = 1 [] gens i2 src \"degree\"\n");
  ::setenv("NIELSEN_DB", alt.string().c_str(), 1);
  auto r = run({"db-validate"});
  auto flag = run({"--db", NIELSEN_DEFAULT_DB, "db-validate"});
  ::unsetenv("NIELSEN_DB");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "v1 envtest"));
  EXPECT_TRUE(contains(flag.out, "v1 default-2026.10"));
}

TEST(CliParsing, Coordinates) {
  EXPECT_EQ(cli::parse_coords("1,-2, 3"), (std::vector<Integer>{1, -2, 3}));
  EXPECT_TRUE(cli::parse_coords("").empty());
  EXPECT_TRUE(cli::parse_coords("()").empty());
  EXPECT_EQ(cli::parse_coords("123456789012345678901234567890")[0], Integer("123456789012345678901234567890"));
  EXPECT_THROW(cli::parse_coords("1,,2"), Error);
  EXPECT_THROW(cli::parse_coords("x"), Error);
}
