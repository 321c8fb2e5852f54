#include <gtest/gtest.h>

#include <fstream>

#include "cramer/export.hpp"
#include "cramer/report.hpp"
#include "cramer/verify.hpp"

using namespace cramer;

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return nlohmann::json::parse(in);
}

const std::string kDataDir = std::string(CRAMER_SOURCE_DIR) + "/data";

} // namespace

TEST(IdealJson, StructureAndSchema) {
    const nlohmann::json schema = load_json(kDataDir + "/ideal.schema.json");

    const nlohmann::json small = ideal_to_json(generate_ideal(1, 1, OmegaMode::with_omega));
    EXPECT_EQ(small.at("generators").size(), 3u);
    EXPECT_EQ(small.at("variables").size(), 5u);
    EXPECT_TRUE(validate_against_schema(small, schema).empty());

    const nlohmann::json big = ideal_to_json(generate_ideal(2, 2, OmegaMode::omega_less));
    EXPECT_EQ(big.at("generators").size(), 10u);
    EXPECT_EQ(big.at("variables").size(), 16u);
    EXPECT_EQ(big.at("omega_mode"), "omega-less");
    for (const auto& gen : big.at("generators")) EXPECT_EQ(gen.at("terms").size(), 4u);
    const auto errors = validate_against_schema(big, schema);
    EXPECT_TRUE(errors.empty()) << (errors.empty() ? "" : errors.front());
}

TEST(IdealJson, ExactCoefficientStrings) {
    const nlohmann::json doc = ideal_to_json(generate_ideal(1, 2, OmegaMode::with_omega));
    // Every coefficient in these systems is +-1.
    for (const auto& gen : doc.at("generators"))
        for (const auto& term : gen.at("terms")) {
            const std::string c = term.at("coeff").get<std::string>();
            EXPECT_TRUE(c == "1" || c == "-1") << c;
        }
}

TEST(IdealExport, DeterministicBytes) {
    const std::string once = render_ideal(generate_ideal(2, 3, OmegaMode::with_omega), "json");
    const std::string twice = render_ideal(generate_ideal(2, 3, OmegaMode::with_omega), "json");
    EXPECT_EQ(once, twice);
    EXPECT_THROW(render_ideal(generate_ideal(1, 1, OmegaMode::with_omega), "latex"), ConfigError);
}

TEST(IdealExport, CasFormats) {
    const CramerIdeal ideal = generate_ideal(1, 1, OmegaMode::with_omega);
    const std::string m2 = ideal_to_m2(ideal);
    EXPECT_NE(m2.find("R = QQ[m11, m12, n11, n21, w];"), std::string::npos);
    EXPECT_NE(m2.find("I = ideal("), std::string::npos);
    EXPECT_NE(m2.find("m11*n11 + m12*n21"), std::string::npos);

    const std::string singular = ideal_to_singular(ideal);
    EXPECT_NE(singular.find("ring R = 0, (m11, m12, n11, n21, w), dp;"), std::string::npos);
    EXPECT_NE(singular.find("ideal I ="), std::string::npos);
    EXPECT_EQ(singular.find("ideal("), std::string::npos);
}

TEST(Report, JsonShapeAndSchema) {
    const nlohmann::json schema = load_json(kDataDir + "/report.schema.json");
    VerifyConfig cfg;
    cfg.r = 1;
    cfg.s = 1;
    cfg.samples = 5;
    const Report report = run_orbit_suite(cfg);
    EXPECT_TRUE(report.all_pass());
    const nlohmann::json doc = report.to_json();
    const auto errors = validate_against_schema(doc, schema);
    EXPECT_TRUE(errors.empty()) << (errors.empty() ? "" : errors.front());
    EXPECT_EQ(doc.at("suite"), "orbit");
}

TEST(Report, FailurePropagates) {
    Report report;
    report.suite = "demo";
    report.add("good", true);
    report.add("bad", false, nlohmann::json{{"why", "witness"}});
    EXPECT_FALSE(report.all_pass());
    EXPECT_EQ(report.to_json().at("checks").at(1).at("status"), "fail");
}

TEST(SchemaValidator, CatchesViolations) {
    const nlohmann::json schema = load_json(kDataDir + "/report.schema.json");
    nlohmann::json bad = {{"suite", "x"}, {"config", nlohmann::json::object()}};
    EXPECT_FALSE(validate_against_schema(bad, schema).empty()); // missing checks

    nlohmann::json wrong_status = {{"suite", "x"},
                                   {"config", nlohmann::json::object()},
                                   {"all_pass", true},
                                   {"checks", nlohmann::json::array(
                                                  {{{"name", "n"}, {"status", "maybe"},
                                                    {"witness", nullptr}}})}};
    EXPECT_FALSE(validate_against_schema(wrong_status, schema).empty());

    const nlohmann::json coeff_schema = {{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}};
    EXPECT_TRUE(validate_against_schema(nlohmann::json("-3/2"), coeff_schema).empty());
    EXPECT_FALSE(validate_against_schema(nlohmann::json("1.5"), coeff_schema).empty());
}

TEST(WriteTextFile, FailsOnBadPath) {
    EXPECT_THROW(write_text_file("/nonexistent-dir/xyz/file.txt", "data"), ConfigError);
}
