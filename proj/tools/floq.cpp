#include <iostream>

#include "CLI11.hpp"

#include "floq/io.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Floquet effective-Hamiltonian toolkit"};
    app.fallthrough();
    std::string config_path;
    floq::RunOptions opt;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out-dir", opt.out_dir, "directory for output files");
    app.add_option("--threads", opt.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    auto* trunc = app.add_option("--truncation-override", "Fourier truncation N for every mode");
    auto* order = app.add_option("--order", "series order (replaces the configured orders)");

    std::optional<std::string> verb;
    for (const char* name : {"spectrum", "effective", "sweep", "probability", "catalog"}) {
        auto* sub = app.add_subcommand(name, std::string("run the ") + name + " task");
        sub->callback([&verb, name] { verb = name; });
    }
    auto* honeycomb = app.add_subcommand("honeycomb", "lattice drive compiler");
    honeycomb->require_subcommand(1);
    honeycomb->add_subcommand("compile", "compile a drive schedule")->callback([&verb] {
        verb = "honeycomb-compile";
    });
    honeycomb->add_subcommand("validate", "effective couplings and adiabaticity")->callback([&verb] {
        verb = "honeycomb-validate";
    });
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (trunc->count())
        opt.truncation_override = trunc->as<int>();
    if (order->count())
        opt.order = order->as<int>();
    opt.task = verb;

    try {
        const auto cfg = floq::parse_config(config_path);
        for (const auto& path : floq::run_task(cfg, opt))
            std::cerr << "wrote " << path << "\n";
    } catch (const std::exception& e) {
        const int code = floq::exit_code_for(e);
        std::cerr << (code == 2 ? "physics error: " : "error: ") << e.what() << "\n";
        return code;
    }
    return 0;
}
