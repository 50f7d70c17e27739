#pragma once

#include "crdtlab/spec_io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace crdtlab::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kInputError = 2 };

struct Options {
    std::optional<std::uint64_t> seed; // overrides the scenario seed
    std::size_t fact_depth = 3;
    std::size_t ball = 4;
    std::size_t replay_orders = 10;
    bool timing = false;               // adds wall-clock timing (breaks byte-for-byte reproducibility)
};

/// One command's outcome. `data` is the machine-readable report; `text` renders
/// the same content for people.
struct Report {
    io::json data;
    std::string text;
    int exit_code = kSuccess;
};

/// A command input: a file, or an in-memory document with a label for reports.
struct Source {
    std::string label;
    std::optional<std::string> text;
    std::filesystem::path path;

    Source(const std::filesystem::path &p) : label(p.string()), path(p) {}
    Source(const char *p) : Source(std::filesystem::path(p)) {}
    Source(const std::string &p) : Source(std::filesystem::path(p)) {}
    static Source inline_text(std::string label, std::string text);

    /// File contents (read on demand) or the inline text. Throws InputError.
    [[nodiscard]] std::string bytes() const;
    /// Directory that relative references inside the document resolve against.
    [[nodiscard]] std::filesystem::path base_dir() const;
};

Report cmd_validate(const Source &spec, const Options &opts = {});
Report cmd_check_axioms(const Source &spec, const Options &opts = {});
Report cmd_analyze(const Source &spec, const Options &opts = {});
Report cmd_simulate(const Source &scenario, const Options &opts = {});
/// Empty `state` means the initial state.
Report cmd_undo(const Source &spec, const std::string &state, const std::string &action, const Options &opts = {});
Report cmd_equiv(const Source &a, const Source &b, const Options &opts = {});

/// Report bodies shared with the Python module.
io::json validation_json(const FiniteCrdtSpec &spec, const ValidationReport &r);
io::json axioms_json(const FiniteCrdtSpec &spec, const AxiomReport &r);
io::json facts_json(const FactsReport &r);
io::json consequences_json(const ConsequencesReport &r);
io::json decomposition_json(const CyclicDecomposition &d);
io::json witness_json(const EquivalenceWitness &w);
io::json analysis_json(const Analysis &a);
io::json simulation_json(const sim::Scenario &sc, const sim::ScenarioResult &r);

} // namespace crdtlab::cli
