// scenario.cpp — Config parsing, presets, CSV output and oracle cross-checks

#include "ptq/scenario.hpp"

#include "ptq/errors.hpp"
#include "ptq/oracle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace ptq::scenario {

using json = nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Drops a trailing '#' comment that is not inside a JSON string.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

double as_number(const std::string& key, const json& v) {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
}

double as_beta(const std::string& key, const json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw ConfigError(key, "expected a number or \"inf\"");
    }
    return as_number(key, v);
}

std::size_t as_count(const std::string& key, const json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(key, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

cplx as_complex(const std::string& key, const json& v) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError(key, "expected a number or [re, im]");
}

std::string format_number(double x) {
    if (x == 0.0) x = 0.0;  // no "-0"
    if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void csv_number(std::ostream& os, double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

} // namespace

// ------------------------------- Config -------------------------------------

void ScenarioConfig::validate() const {
    if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("name", "must be a non-empty file-name prefix");
    }
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("s", "must be positive");
    if (!(lambda_s >= 0.0) || !std::isfinite(lambda_s)) throw ConfigError("lambda_s", "must be nonnegative");
    if (!(Omega > 0.0) || !std::isfinite(Omega)) throw ConfigError("Omega", "must be positive");
    if (!(beta > 0.0)) throw ConfigError("beta", "must be positive or \"inf\"");
    if (omega0 && (!(*omega0 > 0.0) || !std::isfinite(*omega0))) {
        throw ConfigError("omega0", "must be positive or \"consistent\"");
    }
    if (alpha_list.empty()) throw ConfigError("alpha_list", "must not be empty");
    for (double al : alpha_list) {
        if (!(std::abs(al) <= 1.0)) throw ConfigError("alpha_list", "values must lie in [-1, 1]");
    }
    const double norm = std::norm(a) + std::norm(b);
    if (!(std::abs(norm - 1.0) <= 1e-12)) throw ConfigError("a", "|a|^2 + |b|^2 must equal 1");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max", "must be nonnegative");
    if (n_samples < 1) throw ConfigError("n_samples", "must be at least 1");
    if (t_max > 0.0 && n_samples < 2) throw ConfigError("n_samples", "must be at least 2 when t_max > 0");
    if (!(rel_tol > 0.0)) throw ConfigError("rel_tol", "must be positive");
    if (modes < 1) throw ConfigError("modes", "must be at least 1");
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw ConfigError("omega_max", "must be positive");
    if (!(fock_omega > 0.0) || !std::isfinite(fock_omega)) throw ConfigError("fock_omega", "must be positive");
    if (!(fock_g_sq >= 0.0) || !std::isfinite(fock_g_sq)) throw ConfigError("fock_g_sq", "must be nonnegative");
    if (fock_n_cut < 1) throw ConfigError("fock_n_cut", "must be at least 1");
    if (fock_modes < 1 || fock_modes > 3) throw ConfigError("fock_modes", "must be 1, 2 or 3");
}

QubitSplitting ScenarioConfig::splitting(const Hermiticity& h) const {
    if (omega0) return QubitSplitting(*omega0);
    return QubitSplitting::consistent(h);
}

QuadratureSpec ScenarioConfig::quadrature() const {
    QuadratureSpec q;
    q.rel_tol = rel_tol;
    return q;
}

std::vector<double> ScenarioConfig::times() const {
    std::vector<double> ts(n_samples);
    if (n_samples == 1) {
        ts[0] = 0.0;
        return ts;
    }
    const double denom = static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) {
        ts[i] = t_max * static_cast<double>(i) / denom;
    }
    return ts;
}

ScenarioConfig parse_config(std::string_view text) {
    std::map<std::string, json> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        const std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected `key = value`");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "missing key");
        json v = json::parse(value, nullptr, false);
        if (v.is_discarded()) {
            // bare words (inf, consistent) are accepted as strings
            const bool bare = !value.empty() && std::all_of(value.begin(), value.end(), [](char c) {
                return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
            });
            if (!bare) throw ConfigError(key, "value is not valid JSON");
            v = std::string(value);
        }
        if (!entries.emplace(key, std::move(v)).second) throw ConfigError(key, "duplicate key");
    }

    ScenarioConfig c;
    bool have_sz = false;
    bool have_amplitudes = false;
    for (const auto& [key, v] : entries) {
        if (key == "name") {
            if (!v.is_string()) throw ConfigError(key, "expected a string");
            c.name = v.get<std::string>();
        } else if (key == "s") {
            c.s = as_number(key, v);
        } else if (key == "lambda_s") {
            c.lambda_s = as_number(key, v);
        } else if (key == "Omega") {
            c.Omega = as_number(key, v);
        } else if (key == "beta") {
            c.beta = as_beta(key, v);
        } else if (key == "omega0") {
            if (v.is_string() && v.get<std::string>() == "consistent") {
                c.omega0.reset();
            } else {
                c.omega0 = as_number(key, v);
            }
        } else if (key == "alpha_list") {
            if (v.is_number()) {
                c.alpha_list = {v.get<double>()};
            } else if (v.is_array()) {
                c.alpha_list.clear();
                for (const auto& x : v) c.alpha_list.push_back(as_number(key, x));
            } else {
                throw ConfigError(key, "expected a number or an array of numbers");
            }
        } else if (key == "sz") {
            const double sz = as_number(key, v);
            if (!(std::abs(sz) <= 1.0)) throw ConfigError(key, "must lie in [-1, 1]");
            const auto st = QubitPureState::from_sz(sz);
            c.a = st.a();
            c.b = st.b();
            have_sz = true;
        } else if (key == "a") {
            c.a = as_complex(key, v);
            have_amplitudes = true;
        } else if (key == "b") {
            c.b = as_complex(key, v);
            have_amplitudes = true;
        } else if (key == "correlated") {
            if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
            c.correlated = v.get<bool>();
        } else if (key == "t_max") {
            c.t_max = as_number(key, v);
        } else if (key == "n_samples") {
            c.n_samples = as_count(key, v);
        } else if (key == "rel_tol") {
            c.rel_tol = as_number(key, v);
        } else if (key == "modes") {
            c.modes = as_count(key, v);
        } else if (key == "omega_max") {
            c.omega_max = as_number(key, v);
        } else if (key == "fock_omega") {
            c.fock_omega = as_number(key, v);
        } else if (key == "fock_g_sq") {
            c.fock_g_sq = as_number(key, v);
        } else if (key == "fock_n_cut") {
            c.fock_n_cut = as_count(key, v);
        } else if (key == "fock_modes") {
            c.fock_modes = as_count(key, v);
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    if (have_sz && have_amplitudes) throw ConfigError("sz", "give either sz or (a, b), not both");
    if (have_amplitudes && (!entries.contains("a") || !entries.contains("b"))) {
        throw ConfigError(entries.contains("a") ? "b" : "a", "a and b must be given together");
    }
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string echo_config(const ScenarioConfig& c) {
    std::ostringstream os;
    auto cplx_str = [](cplx z) { return "[" + format_number(z.real()) + ", " + format_number(z.imag()) + "]"; };
    os << "name = " << json(c.name).dump() << '\n';
    os << "s = " << format_number(c.s) << '\n';
    os << "lambda_s = " << format_number(c.lambda_s) << '\n';
    os << "Omega = " << format_number(c.Omega) << '\n';
    os << "beta = " << format_number(c.beta) << '\n';
    os << "omega0 = " << (c.omega0 ? format_number(*c.omega0) : std::string("\"consistent\"")) << '\n';
    os << "alpha_list = [";
    for (std::size_t i = 0; i < c.alpha_list.size(); ++i) {
        os << (i ? ", " : "") << format_number(c.alpha_list[i]);
    }
    os << "]\n";
    os << "a = " << cplx_str(c.a) << '\n';
    os << "b = " << cplx_str(c.b) << '\n';
    os << "correlated = " << (c.correlated ? "true" : "false") << '\n';
    os << "t_max = " << format_number(c.t_max) << '\n';
    os << "n_samples = " << c.n_samples << '\n';
    os << "rel_tol = " << format_number(c.rel_tol) << '\n';
    os << "modes = " << c.modes << '\n';
    os << "omega_max = " << format_number(c.omega_max) << '\n';
    os << "fock_omega = " << format_number(c.fock_omega) << '\n';
    os << "fock_g_sq = " << format_number(c.fock_g_sq) << '\n';
    os << "fock_n_cut = " << c.fock_n_cut << '\n';
    os << "fock_modes = " << c.fock_modes << '\n';
    return os.str();
}

ScenarioConfig preset(int figure, char panel) {
    if (figure != 1 && figure != 2) throw ConfigError("figure", "must be 1 or 2");
    ScenarioConfig c;
    switch (panel) {
    case 'a': c.s = 0.2; break;
    case 'b': c.s = 1.0; break;
    case 'c': c.s = 2.0; break;
    default: throw ConfigError("panel", "must be a, b or c");
    }
    c.name = "fig" + std::to_string(figure) + panel;
    c.lambda_s = 1.0;
    c.beta = 1.0;     // time unit
    c.Omega = 1.0;    // Omega beta = 1
    c.omega0 = 1.0;   // beta omega0 = 1
    const auto st = QubitPureState::from_sz(0.0);
    c.a = st.a();
    c.b = st.b();
    c.correlated = true;
    c.t_max = 20.0;
    c.n_samples = 2001;
    return c;
}

// --------------------------------- Output -----------------------------------

std::string alpha_label(double alpha) {
    if (alpha == 0.0) alpha = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, alpha);
    return std::string(buf, res.ptr);
}

std::string csv_file_name(const std::string& name, double alpha) {
    return name + "_alpha" + alpha_label(alpha) + ".csv";
}

void write_csv(std::ostream& os, const DecoherenceTrace& tr) {
    os << kCsvHeader << '\n';
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double values[] = {tr.times[i], tr.gamma1[i], tr.gamma_c[i], tr.phi[i], tr.chi[i],
                                 std::abs(tr.F[i]), tr.rho01[i].real(), tr.rho01[i].imag()};
        for (std::size_t k = 0; k < std::size(values); ++k) {
            if (k) os << ',';
            csv_number(os, values[k]);
        }
        os << '\n';
    }
}

std::vector<DecoherenceTrace> compute_traces(const ScenarioConfig& c, unsigned threads) {
    c.validate();
    const auto sd = c.spectral_density();
    const auto bath = c.bath();
    const auto state = c.state();
    const auto q = c.quadrature();
    const auto times = c.times();

    std::vector<DecoherenceTrace> out(c.alpha_list.size());
    parallel_for(c.alpha_list.size(), threads, [&](std::size_t i) {
        const Hermiticity h(c.alpha_list[i]);
        try {
            out[i] = trace(sd, bath, h, c.splitting(h), state, times, c.correlated, q);
        } catch (const QuadratureError& e) {
            std::ostringstream msg;
            msg << "alpha = " << c.alpha_list[i] << ": " << e.what();
            throw QuadratureError(msg.str(), e.estimate(), e.error_bound());
        }
    });
    return out;
}

std::vector<std::filesystem::path> run_trace(const ScenarioConfig& c, const std::filesystem::path& out_dir,
                                             unsigned threads) {
    const auto traces = compute_traces(c, threads);
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> paths;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto path = out_dir / csv_file_name(c.name, c.alpha_list[i]);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + path.string());
        write_csv(os, traces[i]);
        paths.push_back(path);
    }
    std::ofstream echo(out_dir / "run_config.txt", std::ios::binary);
    echo << echo_config(c);
    return paths;
}

// ------------------------------ Oracle check --------------------------------

bool OracleCheckReport::passed() const {
    if (!(gamma1_rel_dev < tol.discrete) || !(phi_rel_dev < tol.discrete)) return false;
    if (fock_uncorrelated_dev && !(*fock_uncorrelated_dev < tol.fock_uncorrelated)) return false;
    if (fock_correlated_dev && !(*fock_correlated_dev < tol.fock_correlated)) return false;
    return true;
}

void OracleCheckReport::print(std::ostream& os) const {
    auto verdict = [](double dev, double tolerance) { return dev < tolerance ? "PASS" : "FAIL"; };
    os << std::scientific << std::setprecision(3);
    os << "discrete K=" << modes << "  gamma1 max rel dev " << gamma1_rel_dev << "  (tol "
       << tol.discrete << ")  " << verdict(gamma1_rel_dev, tol.discrete) << '\n';
    os << "discrete K=" << modes << "  phi    max rel dev " << phi_rel_dev << "  (tol " << tol.discrete
       << ")  " << verdict(phi_rel_dev, tol.discrete) << '\n';
    if (fock_uncorrelated_dev) {
        os << "fock uncorrelated  max |coherence| dev " << *fock_uncorrelated_dev << "  (tol "
           << tol.fock_uncorrelated << ")  " << verdict(*fock_uncorrelated_dev, tol.fock_uncorrelated)
           << '\n';
    }
    if (fock_correlated_dev) {
        os << "fock correlated    max |coherence - a b* F| " << *fock_correlated_dev << "  (tol "
           << tol.fock_correlated << ")  " << verdict(*fock_correlated_dev, tol.fock_correlated) << '\n';
    }
    os << (passed() ? "oracle check passed" : "oracle check FAILED") << '\n';
    os.unsetf(std::ios::floatfield);
}

OracleCheckReport run_oracle_check(const ScenarioConfig& c, const OracleCheckOptions& opts,
                                   unsigned threads) {
    c.validate();
    OracleCheckReport report;
    report.modes = opts.modes.value_or(c.modes);
    if (report.modes < 1) throw ConfigError("modes", "must be at least 1");

    const auto sd = c.spectral_density();
    const auto q = c.quadrature();
    const auto times = c.times();
    const auto discrete = oracle::discretize(sd, report.modes, c.omega_max * c.Omega);

    std::vector<double> g_dev(c.alpha_list.size(), 0.0);
    parallel_for(c.alpha_list.size(), threads, [&](std::size_t i) {
        const Hermiticity h(c.alpha_list[i]);
        for (double t : times) {
            const double g_ref = gamma1(sd, c.bath(), h, t, q);
            const double g_disc = oracle::gamma1_discrete(discrete, c.beta, h, t);
            g_dev[i] = std::max(g_dev[i], std::abs(g_disc - g_ref) / std::max(std::abs(g_ref), 1e-12));
        }
    });
    report.gamma1_rel_dev = *std::max_element(g_dev.begin(), g_dev.end());
    for (double t : times) {
        const double p_ref = phi(sd, t, q);
        const double p_disc = oracle::phi_discrete(discrete, t);
        report.phi_rel_dev =
            std::max(report.phi_rel_dev, std::abs(p_disc - p_ref) / std::max(std::abs(p_ref), 1e-12));
    }

    if (opts.fock) {
        std::vector<oracle::Mode> modes;
        for (std::size_t k = 0; k < c.fock_modes; ++k) {
            modes.push_back({c.fock_omega * (1.0 + 0.5 * static_cast<double>(k)), c.fock_g_sq});
        }
        const oracle::DiscreteBath small(modes);
        const oracle::FockConfig fc(c.fock_n_cut, c.fock_modes);
        const auto state = c.state();
        const double ab = std::abs(state.a() * std::conj(state.b()));

        double unc = 0.0;
        double cor = 0.0;
        for (double al : c.alpha_list) {
            if (std::abs(al) >= 1.0) continue;
            const Hermiticity h(al);
            const oracle::FockOracle exact(small, fc, c.beta, h, state, false);
            for (double t : times) {
                const double expected = ab * std::exp(-oracle::gamma1_discrete(small, c.beta, h, t));
                unc = std::max(unc, std::abs(std::abs(exact.coherence(t)) - expected));
            }
            if (c.correlated) {
                const oracle::FockOracle exact_c(small, fc, c.beta, h, state, true);
                const auto split = QubitSplitting::consistent(h);
                const ThermalBath bath(c.beta);
                for (double t : times) {
                    const cplx F = coherence_factor_from(oracle::gamma1_discrete(small, c.beta, h, t),
                                                         oracle::phi_discrete(small, t), h, split, bath, state);
                    const cplx expected = state.a() * std::conj(state.b()) * F;
                    cor = std::max(cor, std::abs(exact_c.coherence(t) - expected));
                }
            }
        }
        report.fock_uncorrelated_dev = unc;
        if (c.correlated) report.fock_correlated_dev = cor;
    }
    return report;
}

} // namespace ptq::scenario
