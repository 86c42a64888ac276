// Command-line front door: each subcommand runs one verification suite over
// a bundle (from a description file or a generated ring); `suite` runs all of
// them in order and emits the combined report. Exit codes: 0 all checks pass,
// 1 a check failed, 2 usage or configuration error.

#include <string>

#include "CLI11.hpp"
#include "mulab/suite.hpp"

int main(int argc, char** argv) {
    CLI::App app{"deterministic verification suites for the finite circle-bundle model"};
    app.require_subcommand(1);

    mulab::SuiteConfig cfg;
    std::string which;

    auto add_common = [&cfg](CLI::App* sub) {
        auto* bundle = sub->add_option("--bundle", cfg.bundle_path, "bundle description file");
        sub->add_option("--base-size", cfg.base_size, "ring bundle size when no file is given")
            ->excludes(bundle);
        sub->add_option("--fiber-samples", cfg.fiber_samples, "fiber grid size (>= 8)");
        sub->add_option("--trials", cfg.trials, "random trials per suite");
        sub->add_option("--seed", cfg.seed, "root seed");
        sub->add_option("--tol", cfg.tol, "closed-form tolerance");
        sub->add_option("--out", cfg.out_path, "report path (default: stdout)");
        sub->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_extension_flags = [&cfg](CLI::App* sub) {
        sub->add_option("--iso", cfg.iso_path, "isometry description file");
        sub->add_option("--inject-perturbation", cfg.inject_perturbation,
                        "present a perturbed map of this size as a positive candidate");
    };

    struct SubDef {
        const char* token;
        const char* suite;
        const char* help;
    };
    // Subcommand tokens are the external contract; each maps to a role-named
    // suite runner.
    const SubDef defs[] = {
        {"hausdorff", "dichotomy", "face-distance dichotomy against the sampled oracle"},
        {"lemma38", "retraction", "unit phase retraction trials"},
        {"lemma39", "certificate", "opposite/approach face witness certificates"},
        {"cor36", "intersection", "exhaustive face intersection witnesses"},
        {"prop310", "characterization", "two-face membership characterization"},
        {"tingley", "extension", "sphere isometry extension demonstrations"},
    };
    for (const auto& d : defs) {
        CLI::App* sub = app.add_subcommand(d.token, d.help);
        add_common(sub);
        if (std::string(d.token) == "tingley") add_extension_flags(sub);
        sub->callback([&which, &d]() { which = d.suite; });
    }
    CLI::App* all = app.add_subcommand("suite", "run every suite in order");
    add_common(all);
    add_extension_flags(all);
    all->callback([&which]() { which = "all"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (which == "all") return mulab::run_all_suites(cfg);
    return mulab::run_single_suite(which, cfg);
}
