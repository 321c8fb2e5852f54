#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cramer/cramer.hpp"

namespace {

void emit(const std::string& output, const std::string& content) {
    if (output == "-") {
        std::cout << content;
    } else {
        cramer::write_text_file(output, content);
    }
}

int finish_report(const cramer::Report& report, const std::string& output) {
    emit(output, report.to_json().dump(2) + "\n");
    for (const auto& check : report.checks)
        std::cerr << (check.pass ? "[PASS] " : "[FAIL] ") << report.suite << "/" << check.name
                  << "\n";
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for the matrix-pair orbit closures Cr(r, r+s, s)"};
    app.require_subcommand(1);

    // --- ideal -------------------------------------------------------------
    auto* ideal_cmd = app.add_subcommand("ideal", "Generate and export the defining equations");
    int ideal_r = 2, ideal_s = 2;
    bool ideal_omega_less = false;
    std::string ideal_format = "json";
    std::string ideal_output = "-";
    ideal_cmd->add_option("--r", ideal_r, "row count of M")->check(CLI::PositiveNumber);
    ideal_cmd->add_option("--s", ideal_s, "column count of N")->check(CLI::PositiveNumber);
    ideal_cmd->add_flag("--omega-less", ideal_omega_less, "drop the omega coordinate");
    ideal_cmd->add_option("--format", ideal_format, "json | m2 | singular")
        ->check(CLI::IsMember({"json", "m2", "singular"}));
    ideal_cmd->add_option("--output", ideal_output, "output path, or - for stdout");

    // --- verify ------------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
    std::string suite = "all";
    cramer::VerifyConfig cfg;
    std::string verify_output = "-";
    verify_cmd->add_option("--suite", suite, "orbit | codim | charts | cartier | weights | limit | all")
        ->check(CLI::IsMember({"orbit", "codim", "charts", "cartier", "weights", "limit", "all"}));
    verify_cmd->add_option("--r", cfg.r)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--s", cfg.s)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", cfg.seed, "master seed for all sampling");
    verify_cmd->add_option("--samples", cfg.samples)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--bound", cfg.bound, "entry bound for random draws")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--jobs", cfg.jobs, "sample-level parallelism");
    verify_cmd->add_option("--output", verify_output, "report path, or - for stdout");

    // --- ogr ---------------------------------------------------------------
    auto* ogr_cmd = app.add_subcommand("ogr", "Spinor-variety comparison for the (2,2) case");
    std::string map_path = "data/ogr_coordmap.json";
    std::string map_out, log_out;
    std::string ogr_output = "-";
    bool do_search = false;
    cramer::VerifyConfig ogr_cfg;
    ogr_cfg.samples = 50;
    std::uint64_t budget = 2000000;
    ogr_cmd->add_option("--map", map_path, "committed coordinate-map file");
    ogr_cmd->add_flag("--search", do_search, "search for a map instead of loading one");
    ogr_cmd->add_option("--budget", budget, "search node budget");
    ogr_cmd->add_option("--seed", ogr_cfg.seed);
    ogr_cmd->add_option("--samples", ogr_cfg.samples)->check(CLI::PositiveNumber);
    ogr_cmd->add_option("--bound", ogr_cfg.bound)->check(CLI::PositiveNumber);
    ogr_cmd->add_option("--jobs", ogr_cfg.jobs);
    ogr_cmd->add_option("--map-out", map_out, "write the found map here");
    ogr_cmd->add_option("--log-out", log_out, "write the search log here");
    ogr_cmd->add_option("--output", ogr_output, "report path, or - for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ideal_cmd) {
            const cramer::CramerIdeal ideal = cramer::generate_ideal(
                ideal_r, ideal_s,
                ideal_omega_less ? cramer::OmegaMode::omega_less : cramer::OmegaMode::with_omega);
            emit(ideal_output, cramer::render_ideal(ideal, ideal_format));
            return 0;
        }

        if (*verify_cmd) {
            return finish_report(cramer::run_suite(suite, cfg), verify_output);
        }

        if (*ogr_cmd) {
            ogr_cfg.r = 2;
            ogr_cfg.s = 2;
            std::optional<cramer::CoordMap> map;
            cramer::Report report;
            if (do_search) {
                const cramer::SearchOutcome outcome =
                    cramer::search_identification(ogr_cfg.seed, budget);
                if (!log_out.empty())
                    cramer::write_text_file(
                        log_out, cramer::search_log_to_json(outcome.log).dump(2) + "\n");
                if (outcome.map) {
                    map = outcome.map;
                    if (!map_out.empty())
                        cramer::write_text_file(
                            map_out, cramer::coord_map_to_json(*outcome.map).dump(2) + "\n");
                }
                report = cramer::run_ogr_suite(map, ogr_cfg);
                cramer::CheckResult search_check;
                search_check.name = "identification-search";
                search_check.pass = true; // an exhausted budget is reported, not failed
                search_check.witness = cramer::search_log_to_json(outcome.log);
                report.checks.insert(report.checks.begin(), std::move(search_check));
            } else {
                map = cramer::load_coord_map(map_path);
                report = cramer::run_ogr_suite(map, ogr_cfg);
            }
            return finish_report(report, ogr_output);
        }
    } catch (const cramer::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
