// Python bindings. Languages, spaces and models are opaque handles; reports
// come back as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <set>

#include "occamlab/enumeration.hpp"
#include "occamlab/inference.hpp"
#include "occamlab/relativity.hpp"

namespace py = pybind11;
using namespace occamlab;

namespace {

py::object to_python(const nlohmann::ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

PrefixPredicate member_of(const std::vector<std::string>& prefixes) {
  auto set = std::make_shared<std::set<std::string, std::less<>>>(prefixes.begin(), prefixes.end());
  return [set](std::string_view p) { return set->find(p) != set->end(); };
}

// pybind11 holders cannot be shared_ptr<const T>; the handle stays read-only
// because no mutating method is bound.
using LanguageHandle = std::shared_ptr<Language>;
LanguageHandle handle(const LanguagePtr& p) { return std::const_pointer_cast<Language>(p); }

Process make_process(const std::string& spec, const HypothesisSpace& space) {
  return Process::parse(spec, space.language, space.max_steps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Universal induction over a toy description language";

  auto base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", base_error.ptr());
  py::register_exception<ContradictionError>(m, "ContradictionError", base_error.ptr());
  py::register_exception<FormatError>(m, "FormatError", base_error.ptr());
  py::register_exception<IoError>(m, "IoError", base_error.ptr());

  py::class_<Language, LanguageHandle>(m, "Language")
      .def_property_readonly("id", &Language::id)
      .def_property_readonly("k", [](const Language& l) { return l.alphabet().size(); })
      .def_property_readonly("depth", &Language::depth)
      .def("to_json", &Language::to_json_line)
      .def("__repr__", [](const Language& l) { return "Language(" + l.to_json_line() + ")"; });

  m.def("base_language", [](int k) { return handle(make_base_language(k)); }, py::arg("k") = 2);
  m.def(
      "dictionary_wrapper",
      [](const LanguageHandle& inner, const std::vector<std::string>& table) {
        std::vector<Description> entries;
        for (const auto& t : table) entries.push_back(Description::parse_hex(t));
        return handle(make_dictionary_wrapper(inner, std::move(entries)));
      },
      py::arg("inner"), py::arg("table"));
  m.def(
      "permutation_wrapper",
      [](const LanguageHandle& inner, const OpcodePermutation& perm) {
        return handle(make_permutation_wrapper(inner, perm));
      },
      py::arg("inner"), py::arg("perm"));
  m.def("parse_language", [](const std::string& text) { return handle(Language::parse(text)); });

  m.def(
      "run",
      [](const LanguageHandle& lang, const std::string& description, std::uint64_t max_steps, std::size_t max_emit) {
        const auto out = run(*lang, Description::parse_hex(description), max_steps, max_emit);
        return py::make_tuple(out.emitted, to_string(out.status), out.steps_used);
      },
      py::arg("language"), py::arg("description"), py::arg("max_steps"), py::arg("max_emit"),
      "Run a '<bitlen>:<hex>' description; returns (emitted, status, steps_used).");

  py::class_<HypothesisSpace>(m, "HypothesisSpace")
      .def_property_readonly("language", [](const HypothesisSpace& s) { return handle(s.language); })
      .def_readonly("horizon", &HypothesisSpace::horizon)
      .def_readonly("max_len_bits", &HypothesisSpace::max_len_bits)
      .def_readonly("max_steps", &HypothesisSpace::max_steps)
      .def("__len__", &HypothesisSpace::size)
      .def("classes",
           [](const HypothesisSpace& s) {
             py::dict out;
             for (const auto& [prefix, h] : s.classes) {
               out[py::str(prefix)] = py::make_tuple(h.mdl_bits, h.representative.to_hex(), h.program_count);
             }
             return out;
           })
      .def("mdl", [](const HypothesisSpace& s, const std::string& prefix) { return mdl_of(s, prefix); })
      .def("save", [](const HypothesisSpace& s, const std::filesystem::path& p) { save_space(s, p); });

  m.def(
      "enumerate_space",
      [](const LanguageHandle& lang, int max_len_bits, std::uint64_t max_steps, int horizon, unsigned threads) {
        py::gil_scoped_release release;
        return enumerate_space(lang, max_len_bits, max_steps, horizon, SweepOptions{kDefaultSweepCeiling, threads});
      },
      py::arg("language"), py::arg("max_len_bits"), py::arg("max_steps"), py::arg("horizon"), py::arg("threads") = 0);
  m.def("load_space", &load_space, py::arg("path"));

  py::class_<Model>(m, "Model")
      .def_property_readonly("horizon", &Model::horizon)
      .def_property_readonly("observed_count", &Model::observed_count)
      .def_property_readonly("kind", [](const Model& x) { return to_string(x.kind()); })
      .def("probabilities",
           [](const Model& x) {
             py::dict out;
             for (const auto& e : x.entries()) out[py::str(e.prefix)] = e.probability;
             return out;
           })
      .def("probability", &Model::probability)
      .def("total_mass", &Model::total_mass);

  m.def("solomonoff_prior", &solomonoff_prior, py::arg("space"));
  m.def("observe_update", &observe_update, py::arg("model"), py::arg("symbol"));
  m.def("batch_update", &batch_update, py::arg("model"), py::arg("observed"));
  m.def("correspondence", py::overload_cast<const Model&, std::string_view>(&correspondence));
  m.def("alignment", py::overload_cast<const Model&, std::string_view>(&alignment));
  m.def("entropy", &entropy);
  m.def(
      "reweight",
      [](const Model& x, const std::vector<std::string>& subset, double gamma) {
        return reweight(x, member_of(subset), gamma);
      },
      py::arg("model"), py::arg("subset"), py::arg("gamma"));
  m.def(
      "make_special",
      [](const Model& x, const std::vector<std::string>& zero) { return make_special(x, member_of(zero)); },
      py::arg("model"), py::arg("zero"));
  m.def(
      "steps_to_threshold",
      [](const Model& prior, const HypothesisSpace& space, const std::string& process, double theta) {
        return steps_to_threshold(prior, make_process(process, space), theta);
      },
      py::arg("prior"), py::arg("space"), py::arg("process"), py::arg("theta"));
  m.def(
      "true_prefix",
      [](const HypothesisSpace& space, const std::string& process) {
        return make_process(process, space).true_prefix(space.horizon);
      },
      py::arg("space"), py::arg("process"));

  m.def(
      "construct_posthoc",
      [](const std::string& observed, const std::string& period, int k) {
        return construct_posthoc(observed, period, k).to_hex();
      },
      py::arg("observed"), py::arg("period"), py::arg("k") = 2);
  m.def(
      "verify_posthoc",
      [](const std::string& d, const std::string& observed, const std::string& period, int k) {
        return verify_posthoc(Description::parse_hex(d), observed, period, k,
                              posthoc_verification_budget(observed, period));
      },
      py::arg("description"), py::arg("observed"), py::arg("period"), py::arg("k") = 2);

  m.def(
      "demo_invariance",
      [](const HypothesisSpace& base, const LanguageHandle& wrapper) {
        return to_python(demo_invariance(base, wrapper).to_json());
      },
      py::arg("base_space"), py::arg("wrapper"));
  m.def(
      "demo_reorder",
      [](const HypothesisSpace& base, const std::string& ha, const std::string& hb) {
        return to_python(demo_reorder(base, ha, hb).to_json());
      },
      py::arg("base_space"), py::arg("ha"), py::arg("hb"));
  m.def(
      "demo_overwhelm",
      [](const HypothesisSpace& base, const std::string& observed) {
        return to_python(demo_overwhelm(base, observed).to_json());
      },
      py::arg("base_space"), py::arg("observed"));
  m.def(
      "demo_posthoc",
      [](const std::string& observed, const std::string& period, int k) {
        return to_python(demo_posthoc(observed, period, k).to_json());
      },
      py::arg("observed"), py::arg("period"), py::arg("k") = 2);
  m.def(
      "demo_confidence_tradeoff",
      [](const HypothesisSpace& space, const std::string& process, const std::vector<std::string>& subset_true,
         const std::vector<std::string>& subset_false, double gamma, double theta) {
        return to_python(demo_confidence_tradeoff(space, make_process(process, space), member_of(subset_true),
                                                  member_of(subset_false), gamma, theta)
                             .to_json());
      },
      py::arg("space"), py::arg("process"), py::arg("subset_true"), py::arg("subset_false"), py::arg("gamma"),
      py::arg("theta"));
}
