#include "crdtlab/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
    using namespace crdtlab::cli;

    CLI::App app{"Explore op-based CRDT specs: axioms, undo, group structure and simulation"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    std::uint64_t seed = 0;
    Options opts;
    app.add_flag("--json", as_json, "Emit the JSON report instead of text");
    auto *seed_opt = app.add_option("--seed", seed, "Seed for random replay orders (overrides the scenario seed)");
    app.add_option("--fact-depth", opts.fact_depth, "Maximum action length for the derived facts")
        ->check(CLI::Range(0, 6));
    app.add_option("--ball", opts.ball, "Radius of the state ball used to check witnesses of unbounded kinds")
        ->check(CLI::Range(0, 12));
    app.add_flag("--timing", opts.timing, "Include wall-clock timing in the report");

    std::string spec, spec_b, scenario, state, action;

    auto *validate = app.add_subcommand("validate", "Check a spec is well formed");
    validate->add_option("spec", spec, "Spec file")->required();

    auto *axioms = app.add_subcommand("check-axioms", "Check commutativity, undoability and their consequences");
    axioms->add_option("spec", spec, "Spec file")->required();

    auto *analyze = app.add_subcommand("analyze", "Full pipeline down to the counter tuple and witness");
    analyze->add_option("spec", spec, "Spec or presentation file")->required();

    auto *simulate = app.add_subcommand("simulate", "Replay a scenario under causal delivery");
    simulate->add_option("scenario", scenario, "Scenario file")->required();

    auto *undo = app.add_subcommand("undo", "Synthesize the shortest undo of an action");
    undo->add_option("spec", spec, "Spec file")->required();
    undo->add_option("--action", action, "Comma-separated ops, e.g. \"inc,inc\"")->required();
    undo->add_option("--state", state, "Start state (default: the initial state)");

    auto *equiv = app.add_subcommand("equiv", "Decide equivalence of two specs and synthesize a witness");
    equiv->add_option("a", spec, "First spec")->required();
    equiv->add_option("b", spec_b, "Second spec")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }
    if (*seed_opt) opts.seed = seed;

    Report report;
    try {
        if (*validate) report = cmd_validate(spec, opts);
        else if (*axioms) report = cmd_check_axioms(spec, opts);
        else if (*analyze) report = cmd_analyze(spec, opts);
        else if (*simulate) report = cmd_simulate(scenario, opts);
        else if (*undo) report = cmd_undo(spec, state, action, opts);
        else report = cmd_equiv(spec, spec_b, opts);
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }

    if (as_json)
        std::cout << report.data.dump(2) << "\n";
    else
        std::cout << report.text;
    return report.exit_code;
}
