// qotto: command-line front end for the quantum Otto engine simulator.
//
//   qotto <command> --config <path> [--out dir] [--shots N] [--seed S]
//         [--preset exact-exact|broken-broken|exact-broken] [--ramp staircase|linear]
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "qotto/app/commands.hpp"
#include "qotto/errors.hpp"

namespace {

int exit_code(qotto::ErrorCode code) {
    using qotto::ErrorCode;
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError: return 2;
    case ErrorCode::IoError: return 4;
    default: return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Single-qubit quantum Otto engine simulator"};
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    qotto::app::ConfigOverrides overrides;

    cli.add_option("command", command,
                   "spectrum | steady | cycle | sweep-t2 | sweep-ratio | lep-locate | three-level-compare")
        ->required();
    cli.add_option("--config", config_path, "JSON run configuration")->required();
    cli.add_option("--out", out_dir, "Output directory");
    cli.add_option("--shots", overrides.shots, "Measurements per sample (0 = noiseless)");
    cli.add_option("--seed", overrides.seed, "Seed for shot-noise emulation");
    cli.add_option("--preset", overrides.preset, "exact-exact | broken-broken | exact-broken");
    cli.add_option("--ramp", overrides.ramp, "staircase | linear");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : 2;
    }
    overrides.command = command;

    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
            return 2;
        }
        std::ostringstream text;
        text << in.rdbuf();
        const qotto::app::RunConfig config = qotto::app::parse_config(text.str(), overrides);
        const qotto::app::RunReport report = qotto::app::run(config, out_dir);
        for (const auto& path : report.files) std::printf("wrote %s\n", path.string().c_str());
        return 0;
    } catch (const qotto::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
