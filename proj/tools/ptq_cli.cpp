// ptq — decoherence traces and oracle checks for the PT-symmetric qubit
//
//   ptq trace --config FILE [--out-dir DIR]
//   ptq fig1 a|b|c [--out-dir DIR]
//   ptq fig2 a|b|c [--out-dir DIR]
//   ptq oracle-check --config FILE [--modes K] [--fock]
//
// Global: --threads N (alpha values in parallel), --tol X (quadrature rel_tol).
// Exit codes: 0 ok, 1 validation error, 2 numerical failure, 3 oracle tolerance breach.

#include "ptq/errors.hpp"
#include "ptq/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kOracleBreach = 3 };

} // namespace

int main(int argc, char** argv) {
    using namespace ptq;

    CLI::App app{"Exact dephasing of a PT-symmetric qubit coupled to a bosonic bath"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 1;
    std::optional<double> tol;
    app.add_option("--threads", threads, "Worker threads across alpha values")->check(CLI::PositiveNumber);
    app.add_option("--tol", tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);

    std::string config_path;
    std::string out_dir = ".";
    auto* trace_cmd = app.add_subcommand("trace", "Compute traces for a config file");
    trace_cmd->add_option("--config", config_path, "Scenario config file")->required();
    trace_cmd->add_option("--out-dir", out_dir, "Output directory");

    std::string panel;
    auto* fig1_cmd = app.add_subcommand("fig1", "Total decoherence traces (presets a|b|c)");
    fig1_cmd->add_option("panel", panel, "a (s=0.2), b (s=1) or c (s=2)")
        ->required()
        ->check(CLI::IsMember({"a", "b", "c"}));
    fig1_cmd->add_option("--out-dir", out_dir, "Output directory");
    auto* fig2_cmd = app.add_subcommand("fig2", "Correlation decoherence traces (presets a|b|c)");
    fig2_cmd->add_option("panel", panel, "a (s=0.2), b (s=1) or c (s=2)")
        ->required()
        ->check(CLI::IsMember({"a", "b", "c"}));
    fig2_cmd->add_option("--out-dir", out_dir, "Output directory");

    std::optional<std::size_t> modes;
    bool fock = false;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare analytic results with brute-force oracles");
    oracle_cmd->add_option("--config", config_path, "Scenario config file")->required();
    oracle_cmd->add_option("--modes", modes, "Discrete bath modes K")->check(CLI::PositiveNumber);
    oracle_cmd->add_flag("--fock", fock, "Also run the Fock-truncated exact evolution");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        scenario::ScenarioConfig config;
        if (*trace_cmd || *oracle_cmd) {
            config = scenario::load_config(config_path);
        } else {
            config = scenario::preset(*fig1_cmd ? 1 : 2, panel.front());
        }
        if (tol) {
            config.rel_tol = *tol;
            config.validate();
        }

        if (*oracle_cmd) {
            const auto report = scenario::run_oracle_check(config, {modes, fock}, threads);
            report.print(std::cout);
            return report.passed() ? kOk : kOracleBreach;
        }

        const auto paths = scenario::run_trace(config, out_dir, threads);
        for (const auto& p : paths) std::cout << p.string() << '\n';
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kValidation;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const OracleError& e) {
        std::cerr << "oracle failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
