#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tclevy/experiment.hpp"
#include "tclevy/sde_problem.hpp"

namespace tclevy::cli {

enum class Command { subordinator, inverse, path, strong_order, weak_order };

/// A fully validated command line. Stepsizes are carried as negative
/// power-of-two exponents (delta = 2^-exp) so every refinement ratio is exact.
struct RunConfig {
    Command command = Command::path;
    std::string problem = "paper-example";
    double alpha = 0.9;
    double theta = 0.0;
    std::vector<int> delta_exps;
    int ref_exp = 0;
    std::size_t n_paths = 0;
    double horizon = 1.0;
    std::uint64_t seed = 1;
    std::string out;
    unsigned threads = 1;
    std::string preset;       // "", "paper" or "desk"
    std::string functional = "x";
    std::size_t samples = 1000;
    double newton_tolerance = 1e-5;
    int bootstrap = 1000;
};

/// Raised for anything the user must fix on the command line or in the config
/// file. exit_code() is 0 for --help.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& message, int exit_code = 2)
        : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Parses argv (argv[0] is the program name) plus an optional --config file of
/// flat key=value lines; flags given on the command line win over file values.
/// Seeds fall back to $TCLEVY_SEED, then 1.
RunConfig parse_config(const std::vector<std::string>& args, const EnvLookup& env);
RunConfig parse_config(const std::vector<std::string>& args);

std::string command_name(Command command);

/// "paper-example" or "linear:a,b,s".
SdeProblem make_problem(const std::string& name);

/// "x", "x2", "sin", "const" or "affine:a,b" (Φ(x) = a·x₀ + b).
TestFunctional make_functional(const std::string& name);

inline double delta_from_exp(int exp) { return std::ldexp(1.0, -exp); }

/// Executes the command, writes its CSV output(s) atomically and prints a
/// one-line summary to `log`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

/// parse_config + run with exit codes: 0 ok, 1 runtime failure, 2 usage error.
int main_entry(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace tclevy::cli
