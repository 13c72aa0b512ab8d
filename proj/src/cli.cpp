#include "dtco/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtco/dynamics.hpp"
#include "dtco/entanglement.hpp"
#include "dtco/model.hpp"
#include "dtco/verify.hpp"
#include "dtco/wavefunction.hpp"

namespace dtco::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    // sweep axes
    std::string k_axis = "0.1,0.5,1.0";
    std::string sigma_axis = "0:3:301";
    std::string epsilon_axis = "0";
    // single-point parameters
    double k = 0.1;
    double sigma = 0.3;
    double epsilon = 0.0;
    double hbar = 1.0;
    int n = 0;
    int m = 0;
    std::size_t steps = 1000;
    double x10 = 1.0;
    double p10 = 0.0;
    double x20 = 0.0;
    double p20 = 0.0;
    std::string grid;
    std::optional<int> quad_points;
    std::optional<double> quad_width;
    std::vector<std::string> only;
    std::string out;
    std::string format = "csv";
};

class UsageError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty() || cfg.out == "-") {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError(fmt::format("cannot open '{}' for writing", cfg.out));
    file << text;
    file.flush();
    if (!file) throw IoError(fmt::format("failed writing '{}'", cfg.out));
}

SystemParams point_params(const RunConfig& cfg) {
    try {
        return SystemParams(cfg.k, cfg.sigma, cfg.epsilon, cfg.hbar);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string params_comment(const SystemParams& p) {
    return fmt::format("k={} sigma={} epsilon={} hbar={}", num(p.k()), num(p.sigma()),
                       num(p.epsilon()), num(p.hbar()));
}

json params_json(const SystemParams& p) {
    return {{"k", p.k()}, {"sigma", p.sigma()}, {"epsilon", p.epsilon()}, {"hbar", p.hbar()}};
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    std::vector<double> ks;
    std::vector<double> sigmas;
    std::vector<double> epss;
    try {
        ks = parse_axis(cfg.k_axis);
        sigmas = parse_axis(cfg.sigma_axis);
        epss = parse_axis(cfg.epsilon_axis);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    SweepTable table;
    try {
        table = entropy_sweep(ks, sigmas, epss, cfg.hbar);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    std::string text;
    if (cfg.format == "csv") {
        text += fmt::format("# dtco sweep k={} sigma={} epsilon={} hbar={}\n", cfg.k_axis,
                            cfg.sigma_axis, cfg.epsilon_axis, num(cfg.hbar));
        text += "k,sigma,epsilon,gamma,beta,s_linear,regime,sigma_cut\n";
        for (const auto& r : table.rows) {
            text += fmt::format("{},{},{},{},{},{},{},{}\n", num(r.k), num(r.sigma), num(r.epsilon),
                                opt_num(r.gamma), opt_num(r.beta), opt_num(r.s_linear),
                                to_string(r.regime), opt_num(r.sigma_cut));
        }
    } else {
        json rows = json::array();
        for (const auto& r : table.rows) {
            rows.push_back({{"k", r.k},
                            {"sigma", r.sigma},
                            {"epsilon", r.epsilon},
                            {"gamma", opt_json(r.gamma)},
                            {"beta", opt_json(r.beta)},
                            {"s_linear", opt_json(r.s_linear)},
                            {"regime", to_string(r.regime)},
                            {"sigma_cut", opt_json(r.sigma_cut)}});
        }
        const json doc{{"command", "sweep"},
                       {"config",
                        {{"k", cfg.k_axis},
                         {"sigma", cfg.sigma_axis},
                         {"epsilon", cfg.epsilon_axis},
                         {"hbar", cfg.hbar}}},
                       {"axes", {{"k", ks}, {"sigma", sigmas}, {"epsilon", epss}}},
                       {"rows", rows}};
        text = doc.dump(2) + "\n";
    }
    emit(text, cfg, out);
    return kOk;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
    const SystemParams p = point_params(cfg);
    if (cfg.n < 0 || cfg.m < 0) throw UsageError("--n and --m must be >= 0");
    std::optional<std::vector<double>> axis;
    if (!cfg.grid.empty()) {
        try {
            axis = parse_axis(cfg.grid);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (axis->size() < 11 || !(axis->back() > axis->front())) {
            throw UsageError("--grid needs stop > start and at least 11 points");
        }
    }
    const WaveSpec spec{cfg.n, cfg.m, p};
    const DensityGrid grid = [&] {
        try {
            return axis ? density_grid(spec, axis->front(), axis->back(),
                                       static_cast<int>(axis->size()))
                        : density_grid(spec);
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
    }();

    std::string text;
    if (cfg.format == "csv") {
        text += fmt::format("# dtco density n={} m={} {} grid={}\n", cfg.n, cfg.m,
                            params_comment(p), cfg.grid.empty() ? "default" : cfg.grid);
        text += "X1,X2,density\n";
        for (std::size_t i = 0; i < grid.x1_axis.size(); ++i) {
            for (std::size_t j = 0; j < grid.x2_axis.size(); ++j) {
                text += fmt::format("{},{},{}\n", num(grid.x1_axis[i]), num(grid.x2_axis[j]),
                                    num(grid.at(i, j)));
            }
        }
    } else {
        json matrix = json::array();
        for (std::size_t i = 0; i < grid.x1_axis.size(); ++i) {
            matrix.push_back(std::vector<double>(
                grid.values.begin() + static_cast<std::ptrdiff_t>(i * grid.x2_axis.size()),
                grid.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * grid.x2_axis.size())));
        }
        const json doc{{"command", "density"},
                       {"config",
                        {{"n", cfg.n},
                         {"m", cfg.m},
                         {"params", params_json(p)},
                         {"grid", cfg.grid.empty() ? "default" : cfg.grid}}},
                       {"x1", grid.x1_axis},
                       {"x2", grid.x2_axis},
                       {"density", matrix}};
        text = doc.dump(2) + "\n";
    }
    emit(text, cfg, out);
    return kOk;
}

int cmd_trajectory(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SystemParams p = point_params(cfg);
    const ModeSpectrum s = mode_spectrum(p);
    if (s.regime != Regime::Physical) {
        err << fmt::format("warning: regime {} (eps^2 w2^2 = {}); the map is unstable here\n",
                           to_string(s.regime), num(s.eps2_omega2_sq));
    }
    const PhasePoint s0 = to_normal(ParticleState{cfg.x10, cfg.x20, cfg.p10, cfg.p20});
    const Trajectory t = propagate(s0, p, cfg.steps);

    std::string text;
    if (cfg.format == "csv") {
        text += fmt::format("# dtco trajectory {} steps={} x10={} p10={} x20={} p20={}\n",
                            params_comment(p), cfg.steps, num(cfg.x10), num(cfg.p10),
                            num(cfg.x20), num(cfg.p20));
        text += "n,t,X1,P1,X2,P2,I1,I2\n";
        for (std::size_t n = 0; n < t.states.size(); ++n) {
            const PhasePoint& q = t.states[n];
            text += fmt::format("{},{},{},{},{},{},{},{}\n", n, num(t.time(n)), num(q.X1),
                                num(q.P1), num(q.X2), num(q.P2),
                                num(classical_invariant(q, Mode::One, p)),
                                num(classical_invariant(q, Mode::Two, p)));
        }
    } else {
        json rows = json::array();
        for (std::size_t n = 0; n < t.states.size(); ++n) {
            const PhasePoint& q = t.states[n];
            rows.push_back({{"n", n},
                            {"t", t.time(n)},
                            {"X1", q.X1},
                            {"P1", q.P1},
                            {"X2", q.X2},
                            {"P2", q.P2},
                            {"I1", classical_invariant(q, Mode::One, p)},
                            {"I2", classical_invariant(q, Mode::Two, p)}});
        }
        const json doc{{"command", "trajectory"},
                       {"config",
                        {{"params", params_json(p)},
                         {"steps", cfg.steps},
                         {"initial", {{"x1", cfg.x10}, {"p1", cfg.p10}, {"x2", cfg.x20}, {"p2", cfg.p20}}}}},
                       {"regime", to_string(s.regime)},
                       {"rows", rows}};
        text = doc.dump(2) + "\n";
    }
    emit(text, cfg, out);
    return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    if (cfg.quad_points && *cfg.quad_points < 11) throw UsageError("--quad-points must be >= 11");
    if (cfg.quad_width && !(*cfg.quad_width > 0.0)) throw UsageError("--quad-width must be > 0");
    VerifyOptions opts{cfg.quad_points, cfg.quad_width, cfg.only};
    VerifyReport report;
    try {
        report = run_verification(opts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::string text;
    for (const auto& o : report.outcomes) {
        text += fmt::format("{} {}: {}\n", o.passed ? "PASS" : "FAIL", o.name, o.detail);
    }
    const auto passed = std::count_if(report.outcomes.begin(), report.outcomes.end(),
                                      [](const PropertyOutcome& o) { return o.passed; });
    text += fmt::format("{}/{} properties passed\n", passed, report.outcomes.size());
    emit(text, cfg, out);
    return report.all_passed() ? kOk : kVerificationFailed;
}

} // namespace

std::vector<double> parse_axis(const std::string& text) {
    const auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v)) {
            throw std::invalid_argument(fmt::format("bad number '{}' in axis '{}'", s, text));
        }
        return v;
    };
    if (text.empty()) throw std::invalid_argument("empty axis");

    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) {
            throw std::invalid_argument(fmt::format("axis '{}' is not start:stop:count", text));
        }
        const double start = to_double(parts[0]);
        const double stop = to_double(parts[1]);
        long count = 0;
        try {
            std::size_t used = 0;
            count = std::stol(parts[2], &used);
            if (used != parts[2].size()) count = -1;
        } catch (const std::exception&) {
            count = -1;
        }
        if (count < 1) throw std::invalid_argument(fmt::format("axis '{}' needs count >= 1", text));
        if (stop < start) throw std::invalid_argument(fmt::format("axis '{}' has stop < start", text));
        if (count == 1) {
            if (stop != start) {
                throw std::invalid_argument(fmt::format("axis '{}': one point needs stop == start", text));
            }
            return {start};
        }
        std::vector<double> axis(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) axis[i] = start + (stop - start) * i / (count - 1);
        return axis;
    }

    std::vector<double> values;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) values.push_back(to_double(part));
    if (values.empty()) throw std::invalid_argument("empty axis");
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Discrete-time coupled harmonic oscillators: entanglement, wave functions, maps",
                 "dtco"};
    app.require_subcommand(1);

    const auto add_io = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "Output path (default stdout)");
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    const auto add_point = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "Environment spring constant k")->capture_default_str();
        sub->add_option("--sigma", cfg.sigma, "Inter-particle coupling sigma")->capture_default_str();
        sub->add_option("--epsilon", cfg.epsilon, "Time step epsilon (0 = continuous)")
            ->capture_default_str();
        sub->add_option("--hbar", cfg.hbar, "Reduced Planck constant")->capture_default_str();
    };

    auto* sweep = app.add_subcommand("sweep", "Linear entropy over a (k, sigma, epsilon) grid");
    sweep->add_option("--k", cfg.k_axis, "k axis: value, list a,b,c or start:stop:count")
        ->capture_default_str();
    sweep->add_option("--sigma", cfg.sigma_axis, "sigma axis")->capture_default_str();
    sweep->add_option("--epsilon", cfg.epsilon_axis, "epsilon axis")->capture_default_str();
    sweep->add_option("--hbar", cfg.hbar, "Reduced Planck constant")->capture_default_str();
    add_io(sweep);

    auto* density = app.add_subcommand("density", "Probability density |Psi_nm|^2 on a grid");
    add_point(density);
    density->add_option("--n", cfg.n, "Mode-1 quantum number")->capture_default_str();
    density->add_option("--m", cfg.m, "Mode-2 quantum number")->capture_default_str();
    density->add_option("--grid", cfg.grid,
                        "Axis start:stop:count for X1 and X2 (default +/-8 sqrt(hbar/Omega_min), 201)");
    add_io(density);

    auto* trajectory = app.add_subcommand("trajectory", "Iterate the discrete map");
    add_point(trajectory);
    trajectory->add_option("--steps", cfg.steps, "Number of map steps")->capture_default_str();
    trajectory->add_option("--x10", cfg.x10, "Initial x1")->capture_default_str();
    trajectory->add_option("--p10", cfg.p10, "Initial p1")->capture_default_str();
    trajectory->add_option("--x20", cfg.x20, "Initial x2")->capture_default_str();
    trajectory->add_option("--p20", cfg.p20, "Initial p2")->capture_default_str();
    add_io(trajectory);

    auto* verify = app.add_subcommand("verify", "Run the property suite");
    verify->add_option("--quad-points", cfg.quad_points, "Quadrature points per axis");
    verify->add_option("--quad-width", cfg.quad_width, "Quadrature half-width factor");
    verify->add_option("--only", cfg.only,
                       fmt::format("Run a subset: {}", fmt::join(verification_properties(), ", ")))
        ->delimiter(',');
    verify->add_option("--out", cfg.out, "Report path (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        if (density->parsed()) return cmd_density(cfg, out);
        if (trajectory->parsed()) return cmd_trajectory(cfg, out, err);
        return cmd_verify(cfg, out);
    } catch (const UsageError& e) {
        const CLI::App* sub = app.get_subcommands().front();
        err << "error: " << e.what() << "\n" << sub->help();
        return kUsage;
    } catch (const NonexistentStateError& e) {
        err << "error: " << e.what() << "\nviolated: " << e.violated() << "\n";
        return kUnphysical;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
}

} // namespace dtco::cli
