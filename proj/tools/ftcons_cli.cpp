// ftcons: run, inspect and compare leader-follower consensus scenarios.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ftcons/ftcons.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalAbort = 3;

int cmd_run(const std::string& path, const std::string& out_dir, bool strict, bool no_files) {
    const ftcons::ScenarioConfig cfg = ftcons::load_scenario(path, strict);
    const ftcons::Scenario s = ftcons::build_scenario(cfg);
    const ftcons::RunResult result = ftcons::run_scenario(s);
    ftcons::RunReport report = ftcons::make_run_report(cfg.name, s, result);
    if (!no_files && !result.trajectory.empty()) {
        const std::filesystem::path dir =
            out_dir.empty() ? std::filesystem::path("out") / cfg.name : std::filesystem::path(out_dir);
        report.files = ftcons::emit_plots(result.trajectory, report, dir);
    }
    ftcons::print_run_report(std::cout, report);
    for (const auto& f : report.files) {
        std::cout << "wrote " << f.string() << '\n';
    }
    return result.abort ? kNumericalAbort : 0;
}

int cmd_gains(const std::string& path, const std::string& matrices_dir) {
    const ftcons::ScenarioConfig cfg = ftcons::load_scenario(path);
    const ftcons::Scenario s = ftcons::build_scenario(cfg);
    ftcons::format_gains_report(std::cout, s);
    if (!matrices_dir.empty()) {
        std::filesystem::create_directories(matrices_dir);
        const std::pair<const char*, const Eigen::MatrixXd*> mats[] = {
            {"adjacency.csv", &s.topo.adjacency},
            {"laplacian.csv", &s.topo.laplacian},
            {"leader_matrix.csv", &s.topo.leader_matrix},
        };
        for (const auto& [name, m] : mats) {
            const auto file = std::filesystem::path(matrices_dir) / name;
            std::ofstream out(file);
            if (!out) {
                throw std::runtime_error("cannot write " + file.string());
            }
            ftcons::write_matrix_csv(out, *m);
        }
    }
    return 0;
}

int cmd_compare(const std::string& a, const std::string& b) {
    const ftcons::Comparison c =
        ftcons::compare(ftcons::load_scenario(a), ftcons::load_scenario(b));
    ftcons::print_run_report(std::cout, c.first);
    std::cout << '\n';
    ftcons::print_run_report(std::cout, c.second);
    std::cout << '\n';
    ftcons::print_slack_table(std::cout, c.table);
    std::cout << "second column smaller in every row: "
              << (c.table.strictly_smaller(1, 0) ? "yes" : "no") << '\n';
    for (const auto& f : c.flags) {
        std::cout << "flag: " << f << '\n';
    }
    return c.first.abort || c.second.abort ? kNumericalAbort : 0;
}

int cmd_sweep(const std::string& path, const std::string& key,
              const std::vector<std::string>& values, const std::string& csv_path) {
    const ftcons::ScenarioConfig cfg = ftcons::load_scenario(path);
    const auto points = ftcons::sweep(cfg, key, values);
    if (csv_path.empty()) {
        ftcons::write_sweep_csv(std::cout, key, points);
    } else {
        std::ofstream out(csv_path);
        if (!out) {
            throw std::runtime_error("cannot write " + csv_path);
        }
        ftcons::write_sweep_csv(out, key, points);
    }
    for (const auto& p : points) {
        if (p.report.abort) {
            return kNumericalAbort;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-time leader-follower consensus simulator"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    bool strict = false;
    bool no_files = false;
    auto* run = app.add_subcommand("run", "simulate a scenario and write CSV and plot scripts");
    run->add_option("config", config, "scenario file")->required();
    run->add_option("-o,--out", out_dir, "output directory (default out/<name>)");
    run->add_flag("--strict", strict, "reject gains that violate the settling-time conditions");
    run->add_flag("--no-files", no_files, "print the report only");

    std::string matrices_dir;
    auto* gains = app.add_subcommand("gains", "print gain conditions and minimal compliant gains");
    gains->add_option("config", config, "scenario file")->required();
    gains->add_option("--matrices", matrices_dir, "also write A, Q and M as CSV into this directory");

    std::string first;
    std::string second;
    auto* cmp = app.add_subcommand("compare", "run two scenarios and tabulate their slacks");
    cmp->add_option("a", first, "first scenario")->required();
    cmp->add_option("b", second, "second scenario")->required();

    std::string key;
    std::vector<std::string> values;
    std::string csv_path;
    auto* swp = app.add_subcommand("sweep", "rerun a scenario over values of one parameter");
    swp->add_option("config", config, "scenario file")->required();
    swp->add_option("--param", key, "section.key, e.g. observer.tc1")->required();
    swp->add_option("--values", values, "values to assign")->required()->expected(1, -1);
    swp->add_option("--csv", csv_path, "write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kConfigError;
    }

    try {
        if (*run) return cmd_run(config, out_dir, strict, no_files);
        if (*gains) return cmd_gains(config, matrices_dir);
        if (*cmp) return cmd_compare(first, second);
        if (*swp) return cmd_sweep(config, key, values, csv_path);
    } catch (const ftcons::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ftcons::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ftcons::NumericalAbort& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericalAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
