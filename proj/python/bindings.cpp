#include "crdtlab/commands.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace crdtlab::cli;

namespace {

// Reports cross the boundary as (exit code, JSON text); the Python side decodes.
py::tuple to_python(const Report &r) { return py::make_tuple(r.exit_code, r.data.dump(), r.text); }

Source source(const std::string &label, const std::optional<std::string> &text) {
    return text ? Source::inline_text(label, *text) : Source(label);
}

Options options(std::optional<std::uint64_t> seed, std::size_t fact_depth, std::size_t ball) {
    Options o;
    o.seed = seed;
    o.fact_depth = fact_depth;
    o.ball = ball;
    return o;
}

} // namespace

PYBIND11_MODULE(_crdtlab, m) {
    m.doc() = "Native core of crdtlab";

    m.def(
        "validate",
        [](const std::string &label, std::optional<std::string> text) { return to_python(cmd_validate(source(label, text))); },
        py::arg("label"), py::arg("text") = py::none());
    m.def(
        "check_axioms",
        [](const std::string &label, std::optional<std::string> text, std::size_t fact_depth) {
            return to_python(cmd_check_axioms(source(label, text), options({}, fact_depth, 4)));
        },
        py::arg("label"), py::arg("text") = py::none(), py::arg("fact_depth") = 3);
    m.def(
        "analyze",
        [](const std::string &label, std::optional<std::string> text, std::size_t ball) {
            return to_python(cmd_analyze(source(label, text), options({}, 3, ball)));
        },
        py::arg("label"), py::arg("text") = py::none(), py::arg("ball") = 4);
    m.def(
        "simulate",
        [](const std::string &label, std::optional<std::string> text, std::optional<std::uint64_t> seed) {
            return to_python(cmd_simulate(source(label, text), options(seed, 3, 4)));
        },
        py::arg("label"), py::arg("text") = py::none(), py::arg("seed") = py::none());
    m.def(
        "undo",
        [](const std::string &label, std::optional<std::string> text, const std::string &action, const std::string &state) {
            return to_python(cmd_undo(source(label, text), state, action));
        },
        py::arg("label"), py::arg("text"), py::arg("action"), py::arg("state") = "");
    m.def(
        "equiv",
        [](const std::string &a, std::optional<std::string> a_text, const std::string &b,
           std::optional<std::string> b_text) { return to_python(cmd_equiv(source(a, a_text), source(b, b_text))); },
        py::arg("a"), py::arg("a_text"), py::arg("b"), py::arg("b_text"));
}
