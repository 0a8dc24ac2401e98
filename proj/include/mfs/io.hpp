#pragma once
// Command-line surface: run configuration, grid parsing, CSV/JSON emission.

#include <string>
#include <vector>

#include "mfs/exhaust.hpp"

namespace mfs {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    enum class Command { Pressure, FreeEnergy, Spectrum, Exhaust, Rho, LambdaCheck } command =
        Command::FreeEnergy;
    SystemSpec system;
    SystemSpec system_b;  // rho / lambda-check second system
    bool has_system_b = false;
    PotentialSpec psi = PotentialSpec::neg_two_log();
    std::vector<double> beta_grid;
    std::vector<double> alpha_grid;
    std::vector<double> t_grid;
    std::vector<std::uint64_t> n_list;
    double tol = 1e-3;
    DepthPolicy policy;
    double t_cap = 64.0;
    int rho_depth = 12;
    double lambda_R = 2.0;
    std::string out_path;  // empty: stdout
    enum class Format { Csv, Json } format = Format::Csv;
    int threads = 1;
};

// Parses argv (and an optional --config JSON file; flags override file values).
// Throws UsageError on malformed input; the caller maps that to exit code 2.
RunConfig parse_config(int argc, const char* const* argv);

std::string usage_text();

// Executes the configured command and writes the report. Returns 0 on success,
// 1 when any point carries an indeterminate/widened warning.
int run_command(const RunConfig& cfg);

// 17-significant-digit decimal rendering used by the CSV writer.
std::string fmt17(double x);

std::vector<double> parse_grid(const std::string& text);
SystemSpec parse_system(const std::string& text);
PotentialSpec parse_potential(const std::string& text);

}  // namespace mfs
