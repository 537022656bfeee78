#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace risim::cli {

/// Process exit statuses of the command-line tool.
enum class ExitCode : int {
    ok = 0,
    usage = 2,             // malformed invocation (bad flag, bad enum value, ...)
    scenario_invalid = 3,  // scenario file/preset missing or inconsistent
    runtime = 4,           // anything else that stopped the command
};

/// A fully parsed invocation. run_cli() fills one of these from argv; tests
/// and embedders can construct it directly and call run().
struct CommandSpec {
    std::string subcommand;  // pattern | greedy | gain | codebook | budget | reciprocity

    // Common knobs.
    std::string scenario = "prototype";  // preset name or scenario file path
    std::string output_path;             // empty -> write the table to `out`
    std::optional<std::uint64_t> seed_override;
    std::string format = "csv";  // csv | json-lines

    // pattern
    std::string source = "quantized-codeword";
    // quantized-codeword | quantized-optimal | optimal | homogeneous
    double start_deg = -90.0;
    double stop_deg = 90.0;
    double step_deg = 0.1;

    // greedy + gain
    std::size_t sweeps = 1;  // the gain subcommand's CLI default is 3

    // gain
    std::string method = "greedy";  // greedy | quantized-codeword | optimal-continuous
    std::string baseline = "random-average";  // homogeneous | random-average
    std::size_t trials = 1000;  // budget reads this as the phase-draw count (CLI default 100000)

    // codebook
    std::optional<std::size_t> row_index;
    std::optional<std::size_t> col_index;
    bool list_only = false;
    bool bias_states = false;

    // budget
    std::size_t elements = 0;
};

/// Executes one command: the data table goes to --out (or `out`), summary
/// key = value lines and diagnostics go to `err`. Returns the exit status.
int run(const CommandSpec& spec, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (excluding argv[0]) and executes them.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace risim::cli
