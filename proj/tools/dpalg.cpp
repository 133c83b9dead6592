#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dpalg/cli.hpp"
#include "dpalg/error.hpp"

using namespace dpalg;

namespace {

struct Flags {
    std::string file;
    std::optional<std::uint64_t> seed;
    std::optional<int> truncation_f;
    std::optional<int> truncation_deg;
    std::string format;
    std::string output;
    bool strict_degree = false;
};

int run(const Flags& fl, std::optional<std::string> only) {
    try {
        std::ifstream in(fl.file);
        if (!in) {
            std::cerr << "error: cannot read " << fl.file << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        const cli::JobSpec job = cli::parse_job(ss.str());

        cli::RunOptions opt;
        opt.seed = fl.seed;
        opt.truncation_f = fl.truncation_f;
        opt.truncation_deg = fl.truncation_deg;
        opt.strict_degree = fl.strict_degree;
        opt.only = only;
        const cli::JobReport rep = cli::run_job(job, opt);

        cli::Format fmt = job.format;
        if (fl.format == "text") fmt = cli::Format::text;
        if (fl.format == "structured") fmt = cli::Format::structured;
        const std::string text = cli::render(rep, fmt);
        const std::string path = fl.output.empty() ? job.output_path : fl.output;
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(path);
            if (!out) {
                std::cerr << "error: cannot write " << path << "\n";
                return 2;
            }
            out << text;
            std::cerr << "status: " << cli::to_string(rep.status()) << " (" << path << ")\n";
        }
        return cli::exit_code(rep);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dpalg: divided power algebras, restricted Lie algebras, Beck modules and Kahler differentials"};
    app.require_subcommand(1);
    Flags fl;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", fl.file, "job file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", fl.seed, "seed for randomized tasks (overrides the job)");
        sub->add_option("--truncation-f", fl.truncation_f, "f-degree truncation N (overrides the job)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--truncation-deg", fl.truncation_deg, "degree truncation D (overrides the job)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", fl.format, "report format")->check(CLI::IsMember({"text", "structured"}));
        sub->add_option("-o,--output", fl.output, "report path (default: job output, else stdout)");
        sub->add_flag("--strict-degree", fl.strict_degree, "treat degree overflow in beta tasks as an error");
    };

    std::optional<std::string> only;
    auto* run_cmd = app.add_subcommand("run", "run every task of a job");
    add_common(run_cmd);
    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"check", "axiom suites"},
        {"derive", "derivation spaces"},
        {"envelope", "enveloping rings and envelopes"},
        {"omega", "Kahler differential presentations"},
        {"compare", "comparison maps and degree-0 comparisons"},
        {"relations", "seeded relation suites"},
        {"beta", "single divided power operations"},
    };
    for (const auto& [name, help] : kinds) {
        auto* sub = app.add_subcommand(name, "run the job's " + help + " tasks");
        add_common(sub);
        sub->callback([&only, n = name] { only = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(fl, only);
}
