// scenario.hpp — Scenario configuration, figure presets, CSV emission and the oracle check
//
// Config files are flat `key = value` lines; values are JSON (numbers, strings, booleans,
// arrays). `#` starts a comment. Example:
//
//   name        = "fig1b"
//   s           = 1
//   lambda_s    = 1
//   Omega       = 1
//   beta        = 1            # or "inf"
//   omega0      = 1            # or "consistent" (omega0 = 2 sqrt(1 - alpha^2))
//   alpha_list  = [0, 0.5, 0.8, 0.95, 1]
//   sz          = 0            # or a = [re, im] and b = [re, im]
//   correlated  = true
//   t_max       = 20
//   n_samples   = 2001

#pragma once

#include "ptq/decoherence.hpp"
#include "ptq/quadrature.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ptq::scenario {

struct ScenarioConfig {
    std::string name{"trace"};

    double s{1.0};
    double lambda_s{1.0};
    double Omega{1.0};
    double beta{1.0};                      // +inf for zero temperature
    std::optional<double> omega0{1.0};     // nullopt selects the consistent splitting
    std::vector<double> alpha_list{0.0, 0.5, 0.8, 0.95, 1.0};
    cplx a{std::sqrt(0.5), 0.0};
    cplx b{std::sqrt(0.5), 0.0};
    bool correlated{true};
    double t_max{20.0};
    std::size_t n_samples{2001};
    double rel_tol{1e-9};

    // oracle-check parameters
    std::size_t modes{10000};
    double omega_max{60.0};                // in units of Omega
    double fock_omega{1.0};
    double fock_g_sq{0.4};
    std::size_t fock_n_cut{40};
    std::size_t fock_modes{1};

    bool operator==(const ScenarioConfig&) const = default;

    // Re-checks every physical invariant; throws ConfigError naming the field.
    void validate() const;

    SpectralDensity spectral_density() const { return {s, lambda_s, Omega}; }
    ThermalBath bath() const { return ThermalBath(beta); }
    QubitPureState state() const { return {a, b}; }
    QubitSplitting splitting(const Hermiticity& h) const;
    QuadratureSpec quadrature() const;
    std::vector<double> times() const;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

// Emits every key in parseable form; parse_config(echo_config(c)) == c.
std::string echo_config(const ScenarioConfig& c);

// Figure presets: figure in {1, 2}, panel in {'a', 'b', 'c'} -> s = 0.2, 1, 2 with
// beta omega0 = 1, Omega beta = 1, <sigma_z> = 0, lambda_s = 1 and the default alpha sweep.
ScenarioConfig preset(int figure, char panel);

inline constexpr std::string_view kCsvHeader = "t,gamma1,gamma_c,phi,chi,abs_F,re_rho01,im_rho01";

// Shortest round-trip decimal form of alpha, used in file names.
std::string alpha_label(double alpha);
std::string csv_file_name(const std::string& name, double alpha);

void write_csv(std::ostream& os, const DecoherenceTrace& trace);

// One trace per alpha, in alpha_list order. Alphas are distributed over `threads` workers.
std::vector<DecoherenceTrace> compute_traces(const ScenarioConfig& c, unsigned threads = 1);

// Writes <name>_alpha<val>.csv per alpha plus run_config.txt; returns the CSV paths.
std::vector<std::filesystem::path> run_trace(const ScenarioConfig& c, const std::filesystem::path& out_dir,
                                             unsigned threads = 1);

struct OracleCheckOptions {
    std::optional<std::size_t> modes;   // overrides ScenarioConfig::modes
    bool fock{false};
};

struct OracleCheckTolerances {
    double discrete{1e-3};
    double fock_uncorrelated{1e-8};
    double fock_correlated{1e-6};
};

struct OracleCheckReport {
    std::size_t modes{0};
    double gamma1_rel_dev{0.0};
    double phi_rel_dev{0.0};
    std::optional<double> fock_uncorrelated_dev;
    std::optional<double> fock_correlated_dev;
    OracleCheckTolerances tol;

    bool passed() const;
    void print(std::ostream& os) const;
};

OracleCheckReport run_oracle_check(const ScenarioConfig& c, const OracleCheckOptions& opts,
                                   unsigned threads = 1);

} // namespace ptq::scenario
