#include "tclevy_cli/run_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "tclevy/csv.hpp"
#include "tclevy/error.hpp"
#include "tclevy/noise.hpp"
#include "tclevy/random_stream.hpp"
#include "tclevy/theta_solver.hpp"
#include "tclevy/time_change.hpp"

namespace tclevy::cli {
namespace {

constexpr int kMaxExponent = 30;

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table = {
        {"subordinator", Command::subordinator}, {"inverse", Command::inverse},
        {"path", Command::path},                 {"strong-order", Command::strong_order},
        {"weak-order", Command::weak_order}};
    return table;
}

bool is_order_command(Command c) { return c == Command::strong_order || c == Command::weak_order; }

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(trim(item), &used));
            if (used != trim(item).size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(what + ": cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

// Reads "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path,
                                                    const std::set<std::string>& known) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!known.contains(key)) {
            throw UsageError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

bool flag_present(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

struct Preset {
    std::vector<int> deltas;
    int ref;
    std::size_t paths;
};

Preset order_preset(Command command, const std::string& name) {
    const bool paper = name == "paper";
    if (command == Command::strong_order) {
        return paper ? Preset{{15, 14, 13}, 16, 5000} : Preset{{9, 8, 7, 6}, 12, 2000};
    }
    return paper ? Preset{{10, 9, 8}, 12, 10000} : Preset{{8, 7, 6}, 12, 10000};
}

int default_single_exp(Command command) {
    switch (command) {
        case Command::subordinator: return 8;
        case Command::inverse: return 9;
        default: return 15;
    }
}

void validate(RunConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
    if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) throw UsageError("--theta must lie in [0,1]");
    if (!(cfg.horizon > 0.0) || std::isinf(cfg.horizon)) throw UsageError("--horizon must be positive and finite");
    if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
    if (cfg.samples < 1) throw UsageError("--samples must be at least 1");
    if (!(cfg.newton_tolerance > 0.0)) throw UsageError("--newton-tol must be positive");
    if (cfg.bootstrap < 0) throw UsageError("--bootstrap must be nonnegative");
    if (cfg.delta_exps.empty()) throw UsageError("--delta-exp needs at least one exponent");
    for (int e : cfg.delta_exps) {
        if (e < 1 || e > kMaxExponent) throw UsageError("--delta-exp values must lie in [1, 30] (delta = 2^-exp < 1)");
    }
    if (!is_order_command(cfg.command) && cfg.delta_exps.size() != 1) {
        throw UsageError("--delta-exp takes a single exponent for " + command_name(cfg.command));
    }
    if (is_order_command(cfg.command)) {
        if (cfg.n_paths < 1) throw UsageError("--paths must be at least 1");
        const int coarsest_fine = *std::max_element(cfg.delta_exps.begin(), cfg.delta_exps.end());
        if (cfg.ref_exp < coarsest_fine || cfg.ref_exp > kMaxExponent) {
            throw UsageError("--ref-exp must lie in [max(--delta-exp), 30]");
        }
        if (cfg.command == Command::weak_order && cfg.theta != 0.0) {
            throw UsageError("weak-order uses Euler-Maruyama: --theta must be 0");
        }
    }
    make_functional(cfg.functional);

    SdeProblem problem;
    try {
        problem = make_problem(cfg.problem);
    } catch (const tclevy::Error& e) {
        throw UsageError(e.what());
    }
    std::vector<int> exps = cfg.delta_exps;
    if (is_order_command(cfg.command)) exps.push_back(cfg.ref_exp);
    for (int e : exps) {
        if (!(cfg.theta * std::sqrt(problem.lipschitz_constant) * delta_from_exp(e) < 1.0)) {
            throw UsageError("theta*sqrt(Cstar)*delta must be < 1 (delta = 2^-" + std::to_string(e) + ")");
        }
    }
}

std::filesystem::path companion(const std::filesystem::path& out, const std::string& suffix) {
    std::filesystem::path p = out;
    p.replace_extension();
    p += suffix;
    return p;
}

SdeProblem checked_problem(const RunConfig& cfg) { return make_problem(cfg.problem); }

}  // namespace

std::string command_name(Command command) {
    for (const auto& [name, c] : command_table()) {
        if (c == command) return name;
    }
    return "?";
}

SdeProblem make_problem(const std::string& name) {
    if (name == "paper-example") return builtin_paper_example();
    if (name.rfind("linear:", 0) == 0) {
        const auto params = parse_number_list(name.substr(7), "--problem linear");
        if (params.size() != 3) throw UsageError("--problem linear:a,b,s needs exactly three numbers");
        return builtin_linear_problem(params[0], params[1], params[2]);
    }
    throw UsageError("unknown problem '" + name + "' (expected paper-example or linear:a,b,s)");
}

TestFunctional make_functional(const std::string& name) {
    if (name == "x") return [](const State& x) { return x[0]; };
    if (name == "x2") return [](const State& x) { return x.squaredNorm(); };
    if (name == "sin") return [](const State& x) { return std::sin(x[0]); };
    if (name == "const") return [](const State&) { return 1.0; };
    if (name.rfind("affine:", 0) == 0) {
        const auto params = parse_number_list(name.substr(7), "--phi affine");
        if (params.size() != 2) throw UsageError("--phi affine:a,b needs exactly two numbers");
        const double a = params[0], b = params[1];
        return [a, b](const State& x) { return a * x[0] + b; };
    }
    throw UsageError("unknown functional '" + name + "' (expected x, x2, sin, const or affine:a,b)");
}

RunConfig parse_config(const std::vector<std::string>& args_in, const EnvLookup& env) {
    std::vector<std::string> args = args_in;
    if (args.empty()) args.push_back("tclevy");

    CLI::App app{"Simulation of SDEs driven by time-changed Levy noise", "tclevy"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string positional_command, flag_command, config_path, seed_text, preset;
    RunConfig cfg;
    std::string delta_text;
    app.add_option("COMMAND", positional_command, "subordinator | inverse | path | strong-order | weak-order");
    app.add_option("--command", flag_command, "Command (alternative to the positional form)");
    app.add_option("--config", config_path, "Flat key=value config file; flags override it");
    app.add_option("--problem", cfg.problem, "paper-example | linear:a,b,s");
    app.add_option("--alpha", cfg.alpha, "Stable index of the subordinator, in (0,1)")->required();
    app.add_option("--theta", cfg.theta, "Implicitness of the theta method, in [0,1]");
    app.add_option("--delta-exp", delta_text, "Stepsize exponent(s): delta = 2^-exp, comma separated for ladders");
    app.add_option("--ref-exp", cfg.ref_exp, "Reference stepsize exponent for order experiments");
    app.add_option("--paths", cfg.n_paths, "Monte Carlo path count");
    app.add_option("--horizon", cfg.horizon, "Horizon T on the time-changed clock");
    app.add_option("--seed", seed_text, "Seed (falls back to $TCLEVY_SEED, then 1)");
    app.add_option("--out", cfg.out, "Output CSV path");
    app.add_option("--threads", cfg.threads, "Worker threads for Monte Carlo paths");
    app.add_option("--preset", preset, "paper | desk")->check(CLI::IsMember({"paper", "desk"}));
    app.add_option("--phi", cfg.functional, "Weak-error functional: x | x2 | sin | const | affine:a,b");
    app.add_option("--samples", cfg.samples, "Query points for time-changed dumps");
    app.add_option("--newton-tol", cfg.newton_tolerance, "Newton residual tolerance");
    app.add_option("--bootstrap", cfg.bootstrap, "Bootstrap resamples for the slope interval (0 disables)");

    // Config-file values are spliced in as flags unless given on the command line.
    for (std::size_t i = 1; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") config_path = args[i + 1];
    }
    for (const auto& a : args) {
        if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    if (!config_path.empty()) {
        std::set<std::string> known;
        for (const CLI::Option* opt : app.get_options()) {
            for (const auto& name : opt->get_lnames()) known.insert(name);
        }
        known.erase("config");
        known.erase("help");
        for (const auto& [key, value] : read_config_file(config_path, known)) {
            if (!flag_present(args, key)) {
                args.push_back("--" + key);
                args.push_back(value);
            }
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help(), 0);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const std::string command = !positional_command.empty() ? positional_command : flag_command;
    if (command.empty()) throw UsageError("a command is required: subordinator, inverse, path, strong-order or weak-order");
    if (!positional_command.empty() && !flag_command.empty() && positional_command != flag_command) {
        throw UsageError("positional command and --command disagree");
    }
    const auto it = command_table().find(command);
    if (it == command_table().end()) throw UsageError("unknown command '" + command + "'");
    cfg.command = it->second;
    cfg.preset = preset;

    if (!seed_text.empty()) {
        try {
            cfg.seed = std::stoull(seed_text);
        } catch (const std::exception&) {
            throw UsageError("--seed must be a nonnegative integer");
        }
    } else if (const auto from_env = env ? env("TCLEVY_SEED") : std::nullopt) {
        try {
            cfg.seed = std::stoull(*from_env);
        } catch (const std::exception&) {
            throw UsageError("TCLEVY_SEED must be a nonnegative integer");
        }
    }

    if (is_order_command(cfg.command)) {
        const Preset p = order_preset(cfg.command, preset);
        if (delta_text.empty()) cfg.delta_exps = p.deltas;
        if (app.count("--ref-exp") == 0) cfg.ref_exp = p.ref;
        if (app.count("--paths") == 0) cfg.n_paths = p.paths;
    } else if (delta_text.empty()) {
        cfg.delta_exps = {default_single_exp(cfg.command)};
    }
    if (!delta_text.empty()) {
        for (double e : parse_number_list(delta_text, "--delta-exp")) {
            if (e != std::floor(e)) throw UsageError("--delta-exp takes integer exponents");
            cfg.delta_exps.push_back(static_cast<int>(e));
        }
    }
    if (cfg.out.empty()) cfg.out = command + ".csv";

    validate(cfg);
    return cfg;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    return parse_config(args, [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    });
}

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        const std::filesystem::path out = cfg.out;
        const SdeProblem problem = checked_problem(cfg);
        switch (cfg.command) {
            case Command::subordinator:
            case Command::inverse:
            case Command::path: {
                const double delta = delta_from_exp(cfg.delta_exps.front());
                const RandomStream root = make_stream(cfg.seed, 0);
                RandomStream subordinator_stream = root.fork(kSubordinatorLane);
                const InverseTimeChange itc =
                    build_inverse(simulate_subordinator(subordinator_stream, cfg.alpha, delta, cfg.horizon));
                const std::size_t n = itc.terminal_index();
                if (cfg.command == Command::subordinator) {
                    write_file_atomic(out, subordinator_csv(itc.path()));
                    log << "subordinator: N=" << n << " D(N*delta)=" << format_number(itc.path().values()[n])
                        << " -> " << out.string() << '\n';
                    return 0;
                }
                if (cfg.command == Command::inverse) {
                    write_file_atomic(out, inverse_csv(itc, cfg.samples));
                    log << "inverse: E_delta(T)=" << format_number(itc(cfg.horizon)) << " -> " << out.string() << '\n';
                    return 0;
                }
                RandomStream noise_stream = root.fork(kNoiseLane);
                const NoiseGrid noise = generate_coupled_noise(noise_stream, delta, static_cast<double>(n + 1) * delta,
                                                               problem.measure, problem.noise_dim);
                const auto increments = aggregate_noise(noise, delta);
                const SolverConfig solver{cfg.theta, delta, cfg.newton_tolerance};
                const DiscretePath path = ThetaMethod(problem, solver).simulate(increments, n);
                const std::string time_changed = time_changed_csv(path, itc, cfg.samples);
                const std::filesystem::path original = companion(out, ".original.csv");
                write_file_atomic(original, original_path_csv(path));
                write_file_atomic(out, time_changed);
                log << "path: X_delta(T)=" << format_number(path.values[n][0]) << " N=" << n << " -> "
                    << out.string() << ", " << original.string() << '\n';
                return 0;
            }
            case Command::strong_order:
            case Command::weak_order: {
                ExperimentSpec spec;
                spec.theta = cfg.theta;
                spec.alpha = cfg.alpha;
                for (int e : cfg.delta_exps) spec.deltas.push_back(delta_from_exp(e));
                spec.ref_delta = delta_from_exp(cfg.ref_exp);
                spec.n_paths = cfg.n_paths;
                spec.horizon = cfg.horizon;
                spec.seed = cfg.seed;
                spec.threads = cfg.threads;
                const ErrorTable table = cfg.command == Command::strong_order
                                             ? strong_error_experiment(problem, spec)
                                             : weak_error_experiment(problem, make_functional(cfg.functional), spec);
                std::string csv = error_table_csv(table);
                std::string summary = command_name(cfg.command) + " theta=" + format_number(cfg.theta) +
                                      " alpha=" + format_number(cfg.alpha) + ": slope=" +
                                      (table.fitted ? format_number(table.slope) : std::string("nan"));
                if (table.fitted && cfg.bootstrap > 0) {
                    const SlopeInterval ci = bootstrap_slope(table, cfg.bootstrap, cfg.seed);
                    csv += "# slope_ci95_lower=" + format_number(ci.lower) + '\n';
                    csv += "# slope_ci95_upper=" + format_number(ci.upper) + '\n';
                    summary += " (95% bootstrap CI [" + format_number(ci.lower) + ", " + format_number(ci.upper) + "])";
                }
                const std::filesystem::path log2 = companion(out, ".log2.dat");
                write_file_atomic(log2, error_table_log2(table));
                write_file_atomic(out, csv);
                log << summary << " -> " << out.string() << '\n';
                return 0;
            }
        }
        return 1;
    } catch (const tclevy::Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = parse_config(args);
    } catch (const UsageError& e) {
        (e.exit_code() == 0 ? log : err) << e.what() << '\n';
        return e.exit_code();
    }
    return run(cfg, log, err);
}

}  // namespace tclevy::cli
