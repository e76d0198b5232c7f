#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grouplab/cli.hpp"
#include "grouplab/error.hpp"
#include "grouplab/extensions.hpp"
#include "grouplab/links.hpp"
#include "grouplab/magnus.hpp"
#include "grouplab/nilpotent.hpp"
#include "grouplab/pc_json.hpp"
#include "grouplab/ssq.hpp"
#include "grouplab/words.hpp"

namespace py = pybind11;
using namespace grouplab;

namespace {

// Structured results cross the boundary as JSON text; the Python package decodes them.
std::string invariants_json(const std::vector<nilpotent::AbelianInvariants>& layers) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& l : layers) j.push_back({{"rank", l.rank}, {"torsion", l.torsion}});
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bindings for the grouplab C++ core";
    m.attr("__version__") = cli::kVersion;

    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<CapExceeded> cap_exceeded(m, "CapExceeded", PyExc_RuntimeError);
    static py::exception<OverflowError> overflow_error(m, "OverflowError", PyExc_OverflowError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            PyErr_SetString(input_error.ptr(), e.what());
        } catch (const CapExceeded& e) {
            PyErr_SetString(cap_exceeded.ptr(), e.what());
        } catch (const OverflowError& e) {
            PyErr_SetString(overflow_error.ptr(), e.what());
        }
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"grouplab"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int code = cli::run(argv, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));

    m.def("render_presentation", [](const std::string& text) { return words::render(words::parse_presentation(text)); }, py::arg("text"));

    m.def("lcs_weight", [](const std::string& text, const std::string& word, int cap) {
        const auto p = words::parse_presentation(text);
        return magnus::lcs_weight(words::parse_word(word, p.generators), p.rank(), cap);
    }, py::arg("presentation"), py::arg("word"), py::arg("cap") = magnus::kDefaultWeightCap);

    m.def("primitive_relator", [](const std::string& text, int cap) {
        const auto c = magnus::is_primitive_relator(words::parse_presentation(text), cap);
        return py::make_tuple(c.verdict, c.weight, c.coefficient_gcd);
    }, py::arg("presentation"), py::arg("cap") = magnus::kDefaultWeightCap);

    m.def("nq_json", [](const std::string& text, int c, int class_cap, std::size_t generator_cap) {
        const auto q = nilpotent::nq(words::parse_presentation(text), c, {class_cap, generator_cap});
        return py::make_tuple(pc_to_json(q.quotient).dump(), invariants_json(q.layer_invariants));
    }, py::arg("presentation"), py::arg("c"), py::arg("class_cap") = nilpotent::kDefaultClassCap,
       py::arg("generator_cap") = nilpotent::kDefaultGeneratorCap);

    m.def("link_primitive_json", [](const std::string& diagram) {
        return links::is_primitive_link(links::LinkingDiagram::from_json(nlohmann::json::parse(diagram))).to_json().dump();
    }, py::arg("diagram"));

    m.def("braid_torsion_json", [](std::size_t n, int big_n, std::size_t search_bound) {
        const auto e = extensions::braid_quotient(n, big_n);
        return extensions::torsion_search(e, {search_bound}).to_json(e.labels()).dump();
    }, py::arg("n"), py::arg("big_n"), py::arg("search_bound") = extensions::TorsionSearchConfig{}.branch_cap);

    m.def("zone", [](int r, Int s_max, Int t_depth) {
        const auto z = ssq::zone(r, {s_max, t_depth});
        return std::vector<std::pair<Int, Int>>(z.points.begin(), z.points.end());
    }, py::arg("r"), py::arg("s_max"), py::arg("t_depth"));

    m.def("dependency_set", [](int r, Int s, Int t, bool quadrant) {
        const auto v = quadrant ? ssq::quadrant_dependency_set(r, s, t) : ssq::dependency_set(r, s, t);
        return std::vector<std::pair<Int, Int>>(v.begin(), v.end());
    }, py::arg("r"), py::arg("s"), py::arg("t"), py::arg("quadrant") = false);
}
