#include <iostream>

#include "cli_common.hpp"
#include "symca/types.hpp"

int main(int argc, char** argv) {
    CLI::App app{"symca: one-dimensional cellular automata with local symmetries"};
    app.require_subcommand(1);
    app.fallthrough();
    cli::Globals g;
    app.add_option("--seed", g.seed, "Seed for every random choice (printed on each run)");
    app.add_option("--out", g.out, "Write the main output to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    cli::add_family_commands(app, g);
    cli::add_sim_commands(app, g);
    cli::add_density_commands(app, g);

    try {
        app.parse(argc, argv);
        std::cerr << "seed " << g.seed << '\n';
        g.action();
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const symca::Error& e) {
        switch (e.kind()) {
            case symca::ErrorKind::Inconclusive: std::cerr << "inconclusive (budget exhausted): " << e.what() << '\n'; break;
            case symca::ErrorKind::NotLegal: std::cerr << "not legal: " << e.what() << '\n'; break;
            case symca::ErrorKind::InvalidSpec: std::cerr << "usage: " << e.what() << '\n'; return 2;
            default: std::cerr << "error: " << e.what() << '\n';
        }
        return 1;
    } catch (const cli::Failure& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
