#include "qforms/io.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"qforms: exact cochain computations for graded algebras,"
                 " algebroid models, and groupoid complexes"};

    std::string kind, file, window, format;
    long weight = 0;
    bool weight_set = false, json_out = false, reps = false;
    unsigned long seed = 0;
    int samples = 0;

    app.add_option("kind", kind,
                   "check | betti | basic | mqk | double | ginzburg | vanest | cartan-suite")
        ->required();
    app.add_option("file", file, "job file (json)")->required()->check(CLI::ExistingFile);
    app.add_option("--window", window, "degree window a..b (overrides the file)");
    auto* wopt = app.add_option("--weight", weight, "weight value (overrides the file)");
    app.add_flag("--json", json_out, "emit a json report");
    app.add_flag("--reps", reps, "print representative cocycles");
    auto* sopt = app.add_option("--seed", seed, "seed for randomized property runs");
    auto* kopt = app.add_option("--samples", samples, "sample count for property runs");

    CLI11_PARSE(app, argc, argv);
    weight_set = wopt->count() > 0;

    try {
        qforms::JobSpec job = qforms::parse_job(file);
        job.kind = kind;
        if (!window.empty()) {
            auto dots = window.find("..");
            if (dots == std::string::npos) {
                std::cerr << "error: --window looks like a..b\n";
                return 4;
            }
            job.window = {std::stoi(window.substr(0, dots)),
                          std::stoi(window.substr(dots + 2))};
        }
        if (weight_set) job.weight = weight;
        if (json_out) job.format = "json";
        if (reps) job.want_representatives = true;
        if (sopt->count() > 0) job.seed = seed;
        if (kopt->count() > 0) job.samples = samples;

        qforms::Report report = qforms::run_job(job);
        std::cout << report.text;
        return report.exit_code;
    } catch (const std::exception& e) {
        int code = qforms::exit_code_for(e);
        std::cerr << "error: " << e.what() << "\n";
        return code;
    }
}
