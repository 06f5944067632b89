#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include <sstream>

#include "cechctx/analysis.hpp"
#include "cechctx/cli.hpp"
#include "cechctx/corpus.hpp"
#include "cechctx/document.hpp"
#include "cechctx/errors.hpp"
#include "cechctx/report.hpp"

namespace py = pybind11;
using namespace cechctx;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Ring ring_arg(const std::string& name) {
    auto r = parse_ring(name);
    if (!r) throw py::value_error("ring must be 'z' or 'z2', got '" + name + "'");
    return *r;
}

std::vector<Ring> rings_arg(const std::string& name) {
    if (name == "both") return {Ring::mod2, Ring::integers};
    return {ring_arg(name)};
}

ObstructionEntry entry_for(const LoadedModel& m, const ObstructionResult& r, bool with_evidence) {
    return make_obstruction_entry(m, r, is_extendable_at(m.support, r.base_context, r.base_section), with_evidence);
}

}  // namespace

PYBIND11_MODULE(_cechctx, mod) {
    mod.doc() = "Exact contextuality analysis: global sections and cohomology obstructions";

    static py::exception<ValidationError> validation_error(mod, "ValidationError", PyExc_ValueError);
    static py::exception<VerificationError> verification_error(mod, "VerificationError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            std::string msg;
            for (const auto& x : e.problems()) msg += (msg.empty() ? "" : "\n") + x;
            py::set_error(validation_error, msg.c_str());
        } catch (const VerificationError& e) {
            py::set_error(verification_error, e.what());
        } catch (const DomainError& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    py::class_<LoadedModel>(mod, "Model")
        .def_property_readonly("name", [](const LoadedModel& m) { return m.document.name; })
        .def_property_readonly("measurements", [](const LoadedModel& m) { return m.document.measurements; })
        .def_property_readonly("outcomes", [](const LoadedModel& m) { return m.document.outcomes; })
        .def_property_readonly("contexts", [](const LoadedModel& m) { return m.document.contexts; })
        .def_property_readonly("support",
                               [](const LoadedModel& m) {
                                   std::vector<std::vector<std::string>> out;
                                   for (ContextIndex i = 0; i < m.scenario.num_contexts(); ++i) {
                                       std::vector<std::string> row;
                                       for (const auto& s : m.support.support(i)) row.push_back(m.tuple_of(i, s));
                                       out.push_back(std::move(row));
                                   }
                                   return out;
                               })
        .def("classify",
             [](const LoadedModel& m) {
                 auto c = classify(m.support);
                 py::dict d;
                 d["verdict"] = std::string(to_string(c.verdict));
                 std::vector<std::string> globals;
                 for (const auto& g : c.global_sections) globals.push_back(m.scenario.format_tuple(g));
                 d["global_sections"] = globals;
                 return d;
             })
        .def(
            "is_extendable",
            [](const LoadedModel& m, ContextIndex context, const std::string& section) {
                return is_extendable_at(m.support, context, m.section_from_tuple(context, section));
            },
            py::arg("context"), py::arg("section"))
        .def(
            "obstruction",
            [](const LoadedModel& m, ContextIndex context, const std::string& section, const std::string& ring,
               bool witness) {
                auto t = m.section_from_tuple(context, section);
                auto r = obstruction(m.support, context, t, ring_arg(ring));
                return to_python(entry_for(m, r, witness));
            },
            py::arg("context"), py::arg("section"), py::arg("ring") = "z", py::arg("witness") = true)
        .def(
            "all_obstructions",
            [](const LoadedModel& m, const std::string& ring) {
                nlohmann::json out = nlohmann::json::array();
                for (const auto& r : all_obstructions(m.support, ring_arg(ring))) out.push_back(entry_for(m, r, false));
                return to_python(out);
            },
            py::arg("ring") = "z")
        .def("gcd",
             [](const LoadedModel& m) {
                 auto g = gcd_condition(m.scenario);
                 py::dict d;
                 d["degrees"] = g.degrees;
                 d["gcd"] = g.gcd;
                 d["cover_size"] = g.cover_size;
                 d["holds"] = g.holds;
                 return d;
             })
        .def(
            "false_positives",
            [](const LoadedModel& m, const std::string& ring) {
                auto fp = false_positives(m.support, ring_arg(ring));
                py::list entries;
                for (const auto& e : fp.entries) entries.append(py::make_tuple(e.context, m.tuple_of(e.context, e.section)));
                py::dict d;
                d["entries"] = entries;
                d["strongly_contextual"] = fp.strongly_contextual;
                d["strong_contextuality_false_positive"] = fp.strong_contextuality_false_positive;
                return d;
            },
            py::arg("ring") = "z")
        .def(
            "report_json",
            [](const LoadedModel& m, const std::string& rings, bool witness) {
                return emit_report(build_report(m, ReportOptions{rings_arg(rings), witness}), true);
            },
            py::arg("rings") = "both", py::arg("witness") = false);

    mod.def(
        "load", [](const std::string& text) { return load_model(parse_scenario(text)); }, py::arg("text"),
        "Parse and validate a scenario document (JSON text).");
    mod.def("example_names", [] {
        std::vector<std::string> out;
        for (auto n : corpus_names()) out.emplace_back(n);
        return out;
    });
    mod.def(
        "example_text",
        [](const std::string& name) {
            auto t = corpus_text(name);
            if (!t) throw py::key_error(name);
            return std::string(*t);
        },
        py::arg("name"));
    mod.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_command(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a command-line invocation; returns (exit_code, stdout, stderr).");
}
