#ifndef BEREZIN_CLI_HPP
#define BEREZIN_CLI_HPP

#include <berezin/phase_space.hpp>
#include <berezin/types.hpp>

#include <exception>
#include <string>
#include <utility>
#include <vector>

namespace berezin {

inline constexpr int kExitUsage = 64;
inline constexpr int kExitConstraint = 65;
inline constexpr int kExitNumerical = 70;

/// Malformed command line: unknown flags, missing required options,
/// unparseable values. Maps to exit code 64. Constraint violations on
/// well-formed input throw std::invalid_argument (65) and numerical
/// failures std::runtime_error (70).
class UsageError : public std::exception {
public:
    explicit UsageError(std::string message) : message_(std::move(message)) {}
    const char* what() const noexcept override { return message_.c_str(); }

private:
    std::string message_;
};

/// Thrown when --help is requested; carries the help text, exit code 0.
struct HelpRequested {
    std::string text;
};

struct ExperimentConfig {
    std::string command;
    SpaceKind space = SpaceKind::Plane;
    double inv_hbar = 1.0;
    int max_degree = -1;   // -1 until resolved per command and space
    int truncation = -1;
    std::vector<Complex> labels;                      // kernel: {z, w}; coherent/duality: {label}
    std::vector<double> inv_hbar_list;                // sweep
    std::vector<std::pair<Complex, Complex>> pairs;   // sweep probe pairs
    std::string map_name = "identity";                // duality
    int weight = 0;                                   // duality pullback weight
    std::string output_format = "json";
    std::string output_path;
    double tolerance = 1e-10;
};

/// Parses and validates a command line (without the program name). All
/// defaults are resolved to concrete values, so to_args round-trips
/// identically.
ExperimentConfig parse_args(const std::vector<std::string>& args);

/// Canonical argument list reproducing the config through parse_args.
std::vector<std::string> to_args(const ExperimentConfig& config);

/// Runs the experiment and returns the emitted document (JSON or CSV,
/// newline-terminated).
std::string run_to_string(const ExperimentConfig& config);

/// Runs and writes the document to config.output_path or standard output.
/// Returns 0; errors propagate as exceptions.
int run(const ExperimentConfig& config);

}

#endif
