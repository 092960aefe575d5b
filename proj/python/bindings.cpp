#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "moment_lst/cli.hpp"
#include "moment_lst/dsl.hpp"
#include "moment_lst/errors.hpp"

namespace py = pybind11;
using namespace mlst;

namespace {

dsl::Backend backend_from(const std::string& name) {
    if (name == "auto") return dsl::Backend::Auto;
    if (name == "exact") return dsl::Backend::Exact;
    if (name == "approx") return dsl::Backend::Approx;
    throw py::value_error("backend must be auto, exact or approx");
}

/// (exit code, JSON report text); library errors are already folded into
/// the report by the runner.
std::pair<int, std::string> run(const std::string& verb, std::optional<std::string> u, std::optional<std::string> v,
                                std::optional<std::string> f, std::optional<std::string> l,
                                std::optional<std::string> m, std::optional<std::string> lst,
                                std::optional<std::string> steps, std::optional<std::string> expect, int n,
                                double epsilon, const std::string& backend) {
    cli::Command c;
    c.verb = verb;
    c.u = std::move(u), c.v = std::move(v), c.f = std::move(f);
    c.l = std::move(l), c.m = std::move(m), c.lst = std::move(lst);
    c.steps = std::move(steps), c.expect = std::move(expect);
    c.n = n, c.epsilon = epsilon, c.backend = backend_from(backend);
    cli::Outcome o;
    {
        py::gil_scoped_release release;
        o = cli::run(c);
    }
    return {o.exit_code, o.report.dump()};
}

std::string normalize_text(const std::string& text) {
    try {
        return dsl::print(dsl::parse(text));
    } catch (const ParseError& e) {
        throw py::value_error(std::string(e.what()) + " at " + std::to_string(e.line()) + ":" +
                              std::to_string(e.column()));
    }
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.def("run", &run, py::arg("verb"), py::kw_only(), py::arg("u") = py::none(), py::arg("v") = py::none(),
            py::arg("f") = py::none(), py::arg("l") = py::none(), py::arg("m") = py::none(),
            py::arg("lst") = py::none(), py::arg("steps") = py::none(), py::arg("expect") = py::none(),
            py::arg("n") = kDefaultOrder, py::arg("epsilon") = Tolerance{}.eps, py::arg("backend") = "auto");
    mod.def("normalize", &normalize_text, py::arg("text"));
    mod.def("verbs", [] { return cli::verbs(); });
}
