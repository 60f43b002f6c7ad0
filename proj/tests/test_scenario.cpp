#include "ptq/errors.hpp"
#include "ptq/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace ptq;
using namespace ptq::scenario;

namespace {

std::string field_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return {};
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> v;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) v.push_back(std::stod(cell));
    return v;
}

std::filesystem::path scratch_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("ptq_test_" + tag);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("config parsing", "[scenario]") {
    SECTION("empty text gives the defaults") {
        CHECK(parse_config("") == ScenarioConfig{});
    }
    SECTION("full example") {
        const auto c = parse_config(R"(
# ohmic run
name        = "demo"
s           = 1
lambda_s    = 0.5
Omega       = 2
beta        = inf      # zero temperature
omega0      = consistent
alpha_list  = [0, 0.5, 1]
sz          = 0.25
correlated  = false
t_max       = 3
n_samples   = 31
)");
        CHECK(c.name == "demo");
        CHECK(c.lambda_s == 0.5);
        CHECK(c.Omega == 2.0);
        CHECK(std::isinf(c.beta));
        CHECK(!c.omega0.has_value());
        CHECK(c.alpha_list == std::vector<double>{0.0, 0.5, 1.0});
        CHECK(std::abs(c.state().sz() - 0.25) < 1e-15);
        CHECK(!c.correlated);
        CHECK(c.times().size() == 31);
        CHECK(c.times().back() == 3.0);
    }
    SECTION("complex amplitudes and quoted strings") {
        const auto c = parse_config("a = [0.6, 0]\nb = [0, 0.8]\nbeta = \"inf\"\nomega0 = \"consistent\"\nname = \"x#y\"");
        CHECK(c.b == cplx{0.0, 0.8});
        CHECK(c.name == "x#y");
        CHECK(std::isinf(c.beta));
    }
    SECTION("errors name the offending field") {
        CHECK(field_of("s = -1") == "s");
        CHECK(field_of("s = 0") == "s");
        CHECK(field_of("lambda_s = -0.1") == "lambda_s");
        CHECK(field_of("Omega = 0") == "Omega");
        CHECK(field_of("beta = 0") == "beta");
        CHECK(field_of("beta = hot") == "beta");
        CHECK(field_of("omega0 = 0") == "omega0");
        CHECK(field_of("alpha_list = [0, 1.2]") == "alpha_list");
        CHECK(field_of("alpha_list = []") == "alpha_list");
        CHECK(field_of("sz = 2") == "sz");
        CHECK(field_of("sz = 0\na = [1, 0]\nb = [0, 0]") == "sz");
        CHECK(field_of("a = [1, 0]") == "b");
        CHECK(field_of("a = [1, 0]\nb = [1, 0]") == "a");
        CHECK(field_of("t_max = -1") == "t_max");
        CHECK(field_of("n_samples = 0") == "n_samples");
        CHECK(field_of("n_samples = 1.5") == "n_samples");
        CHECK(field_of("t_max = 2\nn_samples = 1") == "n_samples");
        CHECK(field_of("fock_modes = 4") == "fock_modes");
        CHECK(field_of("colour = 3") == "colour");
        CHECK(field_of("s = 1\ns = 2") == "s");
        CHECK(field_of("correlated = 1") == "correlated");
        CHECK(field_of("name = \"a/b\"") == "name");
        CHECK(field_of("just words") == "line 1");
        CHECK(field_of("\n\ns = [1, ") == "s");
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(load_config("/nonexistent/ptq.cfg"), ConfigError);
    }
}

TEST_CASE("config echo round-trips", "[scenario]") {
    std::vector<ScenarioConfig> configs{ScenarioConfig{}, preset(1, 'a'), preset(2, 'c')};
    ScenarioConfig odd;
    odd.name = "odd \"quoted\"";
    odd.beta = std::numeric_limits<double>::infinity();
    odd.omega0.reset();
    odd.alpha_list = {-0.3, 0.1, 1.0 / 3.0};
    odd.a = {0.6, 0.0};
    odd.b = {0.0, 0.8};
    odd.correlated = false;
    odd.t_max = 0.1 + 0.2;
    odd.n_samples = 7;
    odd.rel_tol = 1e-7;
    odd.modes = 123;
    odd.fock_modes = 2;
    configs.push_back(odd);
    for (const auto& c : configs) {
        const auto text = echo_config(c);
        CHECK(parse_config(text) == c);
        CHECK(echo_config(parse_config(text)) == text);
    }
}

TEST_CASE("figure presets", "[scenario]") {
    const double expected_s[] = {0.2, 1.0, 2.0};
    for (int fig : {1, 2}) {
        for (int p = 0; p < 3; ++p) {
            const char panel = static_cast<char>('a' + p);
            const auto c = preset(fig, panel);
            CHECK(c.s == expected_s[p]);
            CHECK(c.beta * c.Omega == 1.0);
            CHECK(c.beta * c.omega0.value() == 1.0);
            CHECK(std::abs(c.state().sz()) < 1e-15);
            CHECK(c.correlated);
            CHECK(c.t_max == 20.0);
            CHECK(c.alpha_list == std::vector<double>{0.0, 0.5, 0.8, 0.95, 1.0});
            CHECK(c.name == "fig" + std::to_string(fig) + panel);
            CHECK_NOTHROW(c.validate());
        }
    }
    CHECK_THROWS_AS(preset(3, 'a'), ConfigError);
    CHECK_THROWS_AS(preset(1, 'd'), ConfigError);
}

TEST_CASE("file names", "[scenario]") {
    CHECK(alpha_label(0.0) == "0");
    CHECK(alpha_label(-0.0) == "0");
    CHECK(alpha_label(0.95) == "0.95");
    CHECK(alpha_label(1.0) == "1");
    CHECK(csv_file_name("fig1a", 0.5) == "fig1a_alpha0.5.csv");
}

TEST_CASE("CSV output", "[scenario]") {
    auto c = preset(1, 'b');
    c.alpha_list = {0.0, 0.8, 1.0};
    c.t_max = 5.0;
    c.n_samples = 51;
    const auto traces = compute_traces(c);
    REQUIRE(traces.size() == 3);

    std::ostringstream os;
    write_csv(os, traces[1]);
    const auto lines = split_lines(os.str());
    REQUIRE(lines.size() == 52);
    CHECK(lines[0] == kCsvHeader);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto row = parse_row(lines[i]);
        REQUIRE(row.size() == 8);
        // t, gamma1, gamma_c, phi, chi, |F|, Re rho01, Im rho01
        CHECK(std::abs(row[5] - std::exp(-row[1] - row[2])) < 1e-9);
        CHECK(std::abs(std::hypot(row[6], row[7]) - 0.5 * row[5]) < 1e-12);
        CHECK(row[0] == c.times()[i - 1]);
    }
    // full round-trip precision
    CHECK(parse_row(lines[20])[1] == traces[1].gamma1[19]);

    std::ostringstream frozen;
    write_csv(frozen, traces[2]);
    for (const auto& line : split_lines(frozen.str())) {
        if (line == kCsvHeader) continue;
        const auto row = parse_row(line);
        CHECK(row[1] == 0.0);
        CHECK(row[2] == 0.0);
        CHECK(row[5] == 1.0);
        CHECK(line.find("-0,") == std::string::npos);
    }
}

TEST_CASE("single sample at t_max = 0", "[scenario]") {
    auto c = preset(1, 'a');
    c.t_max = 0.0;
    c.n_samples = 1;
    const auto traces = compute_traces(c);
    for (const auto& tr : traces) {
        std::ostringstream os;
        write_csv(os, tr);
        const auto lines = split_lines(os.str());
        REQUIRE(lines.size() == 2);
        CHECK(lines[1] == "0,0,0,0,0,1,0.50000000000000011,0");
    }
}

TEST_CASE("runs are deterministic", "[scenario]") {
    auto c = preset(1, 'a');
    c.t_max = 8.0;
    c.n_samples = 81;
    const auto d1 = scratch_dir("det1");
    const auto d2 = scratch_dir("det2");
    const auto p1 = run_trace(c, d1, 1);
    const auto p2 = run_trace(c, d2, 3);
    REQUIRE(p1.size() == c.alpha_list.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].filename() == p2[i].filename());
        CHECK(slurp(p1[i]) == slurp(p2[i]));
    }
    CHECK(parse_config(slurp(d1 / "run_config.txt")) == c);
    std::filesystem::remove_all(d1);
    std::filesystem::remove_all(d2);
}

TEST_CASE("oracle check report", "[scenario]") {
    auto c = preset(1, 'b');
    c.alpha_list = {0.0, 0.6, 1.0};
    c.t_max = 10.0;
    c.n_samples = 41;
    c.fock_n_cut = 30;
    const auto report = run_oracle_check(c, {std::size_t{20000}, true});
    CHECK(report.modes == 20000);
    CHECK(report.gamma1_rel_dev < 1e-3);
    CHECK(report.phi_rel_dev < 1e-3);
    REQUIRE(report.fock_uncorrelated_dev);
    REQUIRE(report.fock_correlated_dev);
    CHECK(*report.fock_uncorrelated_dev < 1e-8);
    CHECK(*report.fock_correlated_dev < 1e-6);
    CHECK(report.passed());
    std::ostringstream os;
    report.print(os);
    CHECK(os.str().find("oracle check passed") != std::string::npos);

    // too few modes to resolve the continuum
    const auto coarse = run_oracle_check(c, {std::size_t{20}, false});
    CHECK(!coarse.fock_uncorrelated_dev);
    CHECK(!coarse.passed());

    // thermal weight escapes a tiny Fock cutoff
    c.beta = 0.2;
    c.fock_n_cut = 3;
    CHECK_THROWS_AS(run_oracle_check(c, {std::nullopt, true}), OracleError);
}
