#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "cramer/report.hpp"

namespace {

const std::string kCli = CRAMER_CLI_PATH;
const std::string kDataDir = std::string(CRAMER_SOURCE_DIR) + "/data";

int run(const std::string& args) {
    const std::string command = kCli + " " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json load_json(const std::string& path) {
    return nlohmann::json::parse(slurp(path));
}

} // namespace

TEST(Cli, IdealExportIsDeterministic) {
    ASSERT_EQ(run("ideal --r 2 --s 2 --omega-less --format json --output /tmp/cli_ideal_a.json"), 0);
    ASSERT_EQ(run("ideal --r 2 --s 2 --omega-less --format json --output /tmp/cli_ideal_b.json"), 0);
    const std::string a = slurp("/tmp/cli_ideal_a.json");
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp("/tmp/cli_ideal_b.json"));
    EXPECT_EQ(load_json("/tmp/cli_ideal_a.json").at("generators").size(), 10u);

    ASSERT_EQ(run("ideal --r 1 --s 1 --format m2 --output /tmp/cli_ideal.m2"), 0);
    EXPECT_NE(slurp("/tmp/cli_ideal.m2").find("R = QQ["), std::string::npos);
    ASSERT_EQ(run("ideal --r 1 --s 1 --format singular --output /tmp/cli_ideal.sing"), 0);
    EXPECT_NE(slurp("/tmp/cli_ideal.sing").find("ring R = 0, ("), std::string::npos);
}

TEST(Cli, VerifySuitePassesAndValidates) {
    ASSERT_EQ(run("verify --suite orbit --r 1 --s 1 --samples 25 --seed 11 "
                  "--output /tmp/cli_verify_a.json"),
              0);
    ASSERT_EQ(run("verify --suite orbit --r 1 --s 1 --samples 25 --seed 11 "
                  "--output /tmp/cli_verify_b.json"),
              0);
    EXPECT_EQ(slurp("/tmp/cli_verify_a.json"), slurp("/tmp/cli_verify_b.json"));

    const nlohmann::json report = load_json("/tmp/cli_verify_a.json");
    EXPECT_TRUE(report.at("all_pass").get<bool>());
    const nlohmann::json schema = load_json(kDataDir + "/report.schema.json");
    EXPECT_TRUE(cramer::validate_against_schema(report, schema).empty());
}

TEST(Cli, VerifyLimitSuiteWithJobs) {
    EXPECT_EQ(run("verify --suite limit --r 2 --s 3 --output /tmp/cli_limit.json --jobs 2"), 0);
    EXPECT_TRUE(load_json("/tmp/cli_limit.json").at("all_pass").get<bool>());
}

TEST(Cli, OgrWithCommittedMap) {
    ASSERT_EQ(run("ogr --map " + kDataDir + "/ogr_coordmap.json --samples 10 "
                  "--output /tmp/cli_ogr.json"),
              0);
    const nlohmann::json report = load_json("/tmp/cli_ogr.json");
    EXPECT_TRUE(report.at("all_pass").get<bool>());
}

TEST(Cli, OgrMissingMapIsConfigError) {
    EXPECT_EQ(run("ogr --map /tmp/no_such_map.json --samples 5 --output /tmp/cli_ogr_missing.json"),
              2);
}

TEST(Cli, OgrSearchZeroBudgetReportsOpen) {
    ASSERT_EQ(run("ogr --search --budget 0 --samples 5 --output /tmp/cli_ogr_search.json "
                  "--log-out /tmp/cli_ogr_log.json"),
              0);
    const nlohmann::json report = load_json("/tmp/cli_ogr_search.json");
    EXPECT_TRUE(report.at("all_pass").get<bool>());
    bool open_reported = false;
    for (const auto& check : report.at("checks"))
        open_reported = open_reported || check.at("name") == "identification-open";
    EXPECT_TRUE(open_reported);
    const nlohmann::json log = load_json("/tmp/cli_ogr_log.json");
    EXPECT_EQ(log.at("maps_found").get<int>(), 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(run("verify --suite bogus"), 0);
    EXPECT_NE(run(""), 0);
}
