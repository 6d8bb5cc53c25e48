#ifndef TORUSFLUX_COMMANDS_HPP
#define TORUSFLUX_COMMANDS_HPP

#include <string>
#include <vector>

namespace torusflux {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitNumeric = 3,
    kExitNotDiskSupported = 4,
    kExitNoOrbitFound = 5,
    kExitDisjointnessFailed = 6,
    kExitVerifyFailed = 7,
};

struct CliResult {
    int exit_code = kExitOk;
    std::string json;         // complete report document, empty on parse errors
    std::string csv;          // orbit rows when requested
    std::string diagnostics;  // human-readable notes for stderr
    std::string json_path;    // empty means stdout
    std::string csv_path;
};

// Runs one subcommand in-process; args exclude argv[0].
CliResult run_command(const std::vector<std::string>& args);

// argv entry point: runs the command and performs the file/stream output.
int run_cli(int argc, const char* const* argv);

}  // namespace torusflux

#endif
