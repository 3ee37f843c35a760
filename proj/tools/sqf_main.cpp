#include <iostream>

#include "CLI11.hpp"
#include "sqf/cli.hpp"

int main(int argc, char** argv) {
    sqf::cli::RunConfig cfg;
    CLI::App app{"Field equality, uniqueness certificates and curve reports for simplest quartic fields"};
    app.require_subcommand(1);

    std::string format = "text";
    unsigned long max_n = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("args", cfg.args, "positional arguments");
        sub->add_option("--max-n", max_n, "upper bound on indices (search, root-number)");
        sub->add_option("--prime-bound", cfg.prime_bound, "largest prime tried when issuing a certificate");
        sub->add_option("--index-cap", cfg.index_cap, "largest index scanned for r0");
        sub->add_option("--terms", cfg.terms, "number of sequence terms / max index");
        sub->add_option("--x-bound", cfg.x_bound, "largest x in curve point searches");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", cfg.out, "write the report (or certificate) to this file");
        sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
    };
    for (const auto& name : sqf::cli::subcommands()) add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << sqf::cli::synopsis();
        return sqf::cli::kExitUsage;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.format = format == "json" ? sqf::cli::Format::Json : sqf::cli::Format::Text;
    if (app.get_subcommands().front()->count("--max-n")) cfg.max_n = max_n;
    return sqf::cli::run(cfg, std::cout, std::cerr);
}
