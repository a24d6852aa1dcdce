#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "invforge/runner.hpp"

using namespace invforge;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    bool has_seed = false;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON run configuration")
        ->required();
    cmd->add_option("--out", args.out_dir,
                    "artifact directory (overrides config)");
    cmd->add_option("--seed", args.seed, "seed override")
        ->each([&args](const std::string&) { args.has_seed = true; });
}

int run_filtered(const CommonArgs& args, const std::string& filter) {
    cli::RunConfig cfg = cli::load_config_file(args.config_path);
    if (args.has_seed) cfg.seed = args.seed;
    std::string out = args.out_dir.empty() ? cfg.out_dir : args.out_dir;
    auto result = cli::run_tasks(cfg, filter, out, std::cout);
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariant-field generator construction and verification "
                 "for finite classical groups"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* run = app.add_subcommand(
        "run", "execute every task in the config in order");
    auto* construct = app.add_subcommand(
        "construct", "build Dickson/Steinberg/bilinear generator families");
    auto* verify = app.add_subcommand(
        "verify", "machine-check the defining identities");
    auto* stabilizer = app.add_subcommand(
        "stabilizer", "enumerate the product-group stabilizer of the "
                      "generator set");
    auto* jacobian = app.add_subcommand(
        "jacobian", "Jacobian-criterion independence of a generator family");
    auto* bench = app.add_subcommand(
        "bench", "time determinant strategies and report term counts");
    for (auto* cmd : {run, construct, verify, stabilizer, jacobian, bench})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2
    }

    std::string filter;
    if (construct->parsed()) filter = "construct";
    if (verify->parsed()) filter = "verify";
    if (stabilizer->parsed()) filter = "stabilizer";
    if (jacobian->parsed()) filter = "jacobian";
    if (bench->parsed()) filter = "bench";

    try {
        return run_filtered(args, filter);
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
