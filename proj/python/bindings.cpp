// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "isacpn/errors.hpp"
#include "isacpn/experiments.hpp"
#include "isacpn/studies.hpp"

namespace py = pybind11;
using namespace isacpn;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

}  // namespace

PYBIND11_MODULE(_isacpn, m) {
    m.doc() = "OFDM ISAC phase-noise simulator core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<FrameError>(m, "FrameError", PyExc_ValueError);
    py::register_exception<EstimationError>(m, "EstimationError", PyExc_RuntimeError);

    py::class_<PnPsdModel>(m, "PnPsdModel")
        .def_static("pll", [](double l0_db, double floor_db, double f_corner, double b_pll) {
            return PnPsdModel::pll({db_to_lin(l0_db), db_to_lin(floor_db), f_corner, b_pll});
        }, py::arg("l0_dbchz"), py::arg("l_floor_dbchz"), py::arg("f_corner_hz"), py::arg("b_pll_hz"))
        .def_static("pole_zero", [](double psd0_db, std::vector<std::pair<double, double>> zeros,
                                    std::vector<std::pair<double, double>> poles) {
            return PnPsdModel::pole_zero({db_to_lin(psd0_db), std::move(zeros), std::move(poles)});
        }, py::arg("psd0_dbchz"), py::arg("zeros"), py::arg("poles"))
        .def("scaled", [](const PnPsdModel& self, double gamma_db) { return PnPsdModel::scaled(self, db_to_lin(gamma_db)); },
             py::arg("gamma_db"))
        .def_property_readonly("gamma", &PnPsdModel::gamma)
        .def("__repr__", &PnPsdModel::describe)
        .def("__eq__", &PnPsdModel::operator==);

    m.def("reference_pll_model", &reference_pll_model);
    m.def("load_psd_model", &load_psd_model, py::arg("path"));
    m.def("eval_psd", [](const PnPsdModel& model, double f) { return eval_psd(model, f); }, py::arg("model"), py::arg("f"));
    m.def("eval_psd",
          [](const PnPsdModel& model, py::array_t<double, py::array::c_style | py::array::forcecast> f) {
              py::array_t<double> out(f.request().shape);
              const double* in = f.data();
              double* o = out.mutable_data();
              for (py::ssize_t i = 0; i < f.size(); ++i) o[i] = eval_psd(model, in[i]);
              return out;
          },
          py::arg("model"), py::arg("f"));
    m.def("integrate_psd", &integrate_psd, py::arg("model"), py::arg("f_max"), py::arg("f_min") = kDefaultFMin);
    m.def("combined_level_bistatic",
          [](const PnPsdModel& tx, const PnPsdModel& rx, double f_max, double f_min) {
              return combined_level(tx, rx, CombineMode::bistatic(), f_max, f_min);
          },
          py::arg("tx"), py::arg("rx"), py::arg("f_max"), py::arg("f_min") = kDefaultFMin);
    m.def("combined_level_monostatic",
          [](const PnPsdModel& model, double tau, double f_max, double f_min) {
              return combined_level(model, model, CombineMode::monostatic(tau), f_max, f_min);
          },
          py::arg("model"), py::arg("tau"), py::arg("f_max"), py::arg("f_min") = kDefaultFMin);
    m.def("db_to_lin", &db_to_lin);
    m.def("lin_to_db", &lin_to_db);

    m.def("synthesize",
          [](const PnPsdModel& model, double rate, std::size_t n, std::uint64_t seed, double f_min) {
              return to_array(synthesize(model, rate, n, seed, f_min).samples);
          },
          py::arg("model"), py::arg("sample_rate"), py::arg("n_samples"), py::arg("seed"), py::arg("f_min") = kDefaultFMin);

    m.def("chebyshev_window", [](std::size_t n, double db) { return to_array(make_window(WindowSpec::chebyshev(db), n)); },
          py::arg("length"), py::arg("attenuation_db") = 100.0);

    m.def("max_unambiguous_range",
          [](std::size_t n, double bandwidth, const std::string& arch) {
              WaveformConfig c;
              c.n_subcarriers = n;
              c.bandwidth = bandwidth;
              if (arch != "monostatic" && arch != "bistatic") throw ConfigError("unknown architecture: " + arch);
              return axes(c, arch == "monostatic" ? Architecture::Monostatic : Architecture::Bistatic).r_max_ua;
          },
          py::arg("n_subcarriers"), py::arg("bandwidth_hz"), py::arg("architecture"));

    m.def("experiment_names", &experiment_names);
    m.def("experiment_anchor", &experiment_anchor);
    m.def("run_experiment",
          [](const std::string& name, std::optional<std::string> config, std::optional<std::uint64_t> seed,
             std::optional<std::size_t> realizations, std::string out, std::size_t scale, bool plots) {
              ExperimentOptions o;
              o.config_file = std::move(config);
              o.seed = seed;
              o.realizations = realizations;
              o.out_dir = std::move(out);
              o.scale = scale;
              o.plots = plots;
              py::gil_scoped_release release;
              return run_experiment(name, o);
          },
          py::arg("name"), py::arg("config") = py::none(), py::arg("seed") = py::none(),
          py::arg("realizations") = py::none(), py::arg("out") = "results", py::arg("scale") = 1, py::arg("plots") = false);
}
