#include <CLI/CLI.hpp>
#include <fstream>
#include <iostream>

#include "moment_lst/cli.hpp"

int main(int argc, char** argv) {
    using mlst::cli::Command;
    CLI::App app{"Relations between Hermitian moment functionals on the unit circle"};
    app.require_subcommand(1);

    Command cmd;
    std::string format = "text";
    std::string backend = "auto";
    std::string steps_file;

    for (const auto& verb : mlst::cli::verbs()) {
        CLI::App* sub = app.add_subcommand(verb);
        sub->add_option("--u", cmd.u, "functional u (DSL)");
        sub->add_option("--v", cmd.v, "functional v (DSL)");
        sub->add_option("--f", cmd.f, "functional for moments (DSL)");
        sub->add_option("--l", cmd.l, "polynomial L (DSL)");
        sub->add_option("--m", cmd.m, "polynomial M (DSL)");
        sub->add_option("--lst", cmd.lst, "triple lst(L; M; C) (DSL)");
        sub->add_option("--steps", steps_file, "steps JSON file from decompose, or - for stdin");
        sub->add_option("--expect", cmd.expect, "expected classification")
            ->check(CLI::IsMember({"from_rm", "wild", "inconclusive"}));
        sub->add_option("--n", cmd.n, "order N (moments: highest index)")->check(CLI::PositiveNumber);
        sub->add_option("--epsilon", cmd.epsilon, "zero-test tolerance of the approximate backend");
        sub->add_option("--backend", backend, "auto, exact or approx")
            ->check(CLI::IsMember({"auto", "exact", "approx"}));
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->callback([&cmd, verb] { cmd.verb = verb; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    cmd.backend = backend == "exact"    ? mlst::dsl::Backend::Exact
                  : backend == "approx" ? mlst::dsl::Backend::Approx
                                        : mlst::dsl::Backend::Auto;
    if (!steps_file.empty()) {
        std::ifstream file;
        std::istream& in = steps_file == "-" ? std::cin : (file.open(steps_file), file);
        if (!in) {
            std::cerr << "cannot read " << steps_file << "\n";
            return 2;
        }
        cmd.steps = std::string(std::istreambuf_iterator<char>(in), {});
    }

    const mlst::cli::Outcome out = mlst::cli::run(cmd);
    if (format == "json") {
        std::cout << out.report.dump(2) << "\n";
    } else {
        std::cout << mlst::cli::render_text(out.report);
    }
    return out.exit_code;
}
