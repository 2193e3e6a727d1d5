#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "listforge/fixture.h"
#include "listforge/gbdt.h"
#include "listforge/lexical.h"
#include "listforge/pipeline.h"

namespace py = pybind11;
namespace lf = listforge;

namespace {

lf::PipelineConfig parse_config(const std::string &config_json) {
  return lf::PipelineConfig::from_json(nlohmann::json::parse(config_json));
}

using Stage = nlohmann::json (*)(const lf::PipelineConfig &);

// Stages exchange JSON text with Python; the wrapper parses it with json.loads.
std::string run_stage(Stage stage, const std::string &config_json) {
  lf::PipelineConfig config = parse_config(config_json);
  py::gil_scoped_release release;
  return stage(config).dump();
}

}  // namespace

PYBIND11_MODULE(_listforge, m) {
  m.doc() = "Taxonomy induction and entity extraction from Wikipedia list pages";

  // Translators run newest first, so the base class goes first.
  py::register_exception<lf::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<lf::MissingInputError>(m, "MissingInputError", PyExc_FileNotFoundError);
  py::register_exception<lf::SingleClassError>(m, "SingleClassError", PyExc_ValueError);

  m.def("head_noun", [](const std::string &s) { return lf::head_noun(s); });
  m.def("is_plural", [](const std::string &s) { return lf::is_plural(s); });
  m.def("singularize", [](const std::string &s) { return lf::singularize(s); });

  m.def(
      "gen_fixture",
      [](const std::string &out, int pages, double noise, uint64_t seed) {
        lf::FixtureOptions options;
        options.list_pages = pages;
        options.noise_rate = noise;
        options.seed = seed;
        lf::write_fixture(out, options);
      },
      py::arg("out"), py::arg("pages") = 200, py::arg("noise") = 0.15, py::arg("seed") = 42);

  m.def("default_config", [] { return lf::PipelineConfig().to_json().dump(); });
  m.def("build_taxonomy", [](const std::string &c) { return run_stage(lf::cmd_build_taxonomy, c); });
  m.def("label", [](const std::string &c) { return run_stage(lf::cmd_label, c); });
  m.def("train", [](const std::string &c) { return run_stage(lf::cmd_train, c); });
  m.def("extract", [](const std::string &c) { return run_stage(lf::cmd_extract, c); });
  m.def("evaluate", [](const std::string &c) { return run_stage(lf::cmd_eval, c); });
}
