// Copyright 2026 The scatterspin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scatterspin/couplings.hpp"
#include "scatterspin/engine.hpp"
#include "scatterspin/error.hpp"
#include "scatterspin/experiments.hpp"
#include "scatterspin/oracle.hpp"
#include "scatterspin/rates.hpp"

namespace py = pybind11;
using namespace scatterspin;

namespace {

CouplingMatrix to_couplings(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw ValidationError("couplings must be a square matrix");
    auto n = static_cast<std::size_t>(a.shape(0));
    return CouplingMatrix::from_dense(n, std::vector<double>(a.data(), a.data() + n * n));
}

py::array_t<double> from_couplings(const CouplingMatrix &j) {
    py::array_t<double> out({j.n(), j.n()});
    std::copy(j.dense().begin(), j.dense().end(), out.mutable_data());
    return out;
}

EvolutionMode to_mode(const std::string &mode) {
    if (mode == "plain") return EvolutionMode::plain;
    if (mode == "spin-echo" || mode == "spin_echo") return EvolutionMode::spin_echo;
    throw ValidationError("mode must be 'plain' or 'spin-echo', got '" + mode + "'");
}

}  // namespace

PYBIND11_MODULE(_scatterspin, m) {
    m.doc() = "Closed-form scattering and leakage in trapped-ion Ising dynamics.";
    m.attr("__version__") = SCATTERSPIN_VERSION;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ModelViolationError>(m, "ModelViolationError", PyExc_ValueError);
    py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_ArithmeticError);

    py::class_<ScatteringRates>(m, "ScatteringRates")
        .def(py::init([](double g01, double g10, double g0g, double g1g, double gel) {
                 ScatteringRates r{g01, g10, g0g, g1g, gel};
                 r.validate();
                 return r;
             }),
             py::arg("gamma_01") = 0.0, py::arg("gamma_10") = 0.0, py::arg("gamma_0g") = 0.0,
             py::arg("gamma_1g") = 0.0, py::arg("gamma_el") = 0.0)
        .def_readwrite("gamma_01", &ScatteringRates::gamma_01)
        .def_readwrite("gamma_10", &ScatteringRates::gamma_10)
        .def_readwrite("gamma_0g", &ScatteringRates::gamma_0g)
        .def_readwrite("gamma_1g", &ScatteringRates::gamma_1g)
        .def_readwrite("gamma_el", &ScatteringRates::gamma_el)
        .def("__repr__", [](const ScatteringRates &r) {
            return "ScatteringRates(gamma_01=" + std::to_string(r.gamma_01) + ", gamma_10=" +
                   std::to_string(r.gamma_10) + ", gamma_0g=" + std::to_string(r.gamma_0g) +
                   ", gamma_1g=" + std::to_string(r.gamma_1g) + ", gamma_el=" + std::to_string(r.gamma_el) + ")";
        });

    m.def("derive_rates", [](const ScatteringRates &r) {
        DerivedRates d = derive_rates(r);
        return py::dict(py::arg("Gamma") = d.Gamma, py::arg("GammaL") = d.GammaL, py::arg("GammaR") = d.GammaR,
                        py::arg("GammaB") = d.GammaB, py::arg("Gamma0") = d.Gamma0, py::arg("Gamma1") = d.Gamma1,
                        py::arg("lambda") = d.lambda, py::arg("Delta") = d.Delta, py::arg("DeltaL") = d.DeltaL);
    });

    m.def(
        "ca_rates",
        [](double power, double waist, double detuning) {
            CaLaserParams p;
            p.power = power;
            p.waist = waist;
            p.detuning = detuning;
            CaRates c = ca_stark_and_rates(p);
            return py::make_tuple(c.rates, c.stark_shift, c.total);
        },
        py::arg("power") = CaLaserParams{}.power, py::arg("waist") = CaLaserParams{}.waist,
        py::arg("detuning") = CaLaserParams{}.detuning,
        "Channel rates, light shift and total scattering rate for the Ca+ 854 nm beam.");

    m.def("equal_couplings", [](std::size_t n, double j) { return from_couplings(equal_couplings(n, j)); });

    py::class_<Engine>(m, "Engine")
        .def(py::init([](py::array_t<double> j, const ScatteringRates &r, double t, const std::string &mode) {
                 return std::make_unique<Engine>(EvolutionSpec{to_couplings(j), r, to_mode(mode), t});
             }),
             py::arg("couplings"), py::arg("rates"), py::arg("t"), py::arg("mode") = "plain")
        .def_property_readonly("n", &Engine::n)
        .def("expect_pauli",
             [](const Engine &e, const std::string &p) { return e.expect_pauli(PauliString::parse(p)); })
        .def("density_matrix_element",
             [](const Engine &e, const std::string &row, const std::string &col) {
                 return e.density_matrix_element(parse_word(row), parse_word(col));
             })
        .def("no_leak_probability", &Engine::no_leak_probability)
        .def("squeezing_parameter", [](const Engine &e) { return squeezing_parameter(e).xi2; });

    m.def(
        "oracle_density_matrix",
        [](py::array_t<double> j, const ScatteringRates &r, double t, const std::string &mode) {
            EvolutionMode md = to_mode(mode);
            CouplingMatrix cm = to_couplings(j);
            DensityMatrix rho0 = DensityMatrix::plus_state(cm.n());
            IntegratorConfig ic;
            if (md == EvolutionMode::spin_echo) return spin_echo_sequence(rho0, cm, r, 2 * t, ic).data;
            ic.t_final = t;
            return integrate(rho0, build_lindbladian(cm, r, HamiltonianVariant::ising), ic).data;
        },
        py::arg("couplings"), py::arg("rates"), py::arg("t"), py::arg("mode") = "plain",
        "Dense 3^N density matrix from direct integration (N <= 4).");

    m.def(
        "ghz_fidelity",
        [](py::array_t<double> j, const ScatteringRates &r, const std::string &mode) {
            GhzResult g = ghz_fidelity(to_couplings(j), r, to_mode(mode));
            return py::dict(py::arg("n") = g.n, py::arg("t_cat") = g.t_cat, py::arg("f_scatter") = g.f_scatter,
                            py::arg("f_unequal") = g.f_unequal, py::arg("f_total") = g.f_total,
                            py::arg("f_postselect") = g.f_postselect, py::arg("p_no_leak") = g.p_no_leak,
                            py::arg("overhead") = g.overhead);
        },
        py::arg("couplings"), py::arg("rates"), py::arg("mode") = "spin-echo");

    m.def("plateau", &plateau, py::arg("m"));

    m.def(
        "correlator_curves",
        [](std::size_t n, std::size_t order, const ScatteringRates &r, std::vector<double> times,
           std::optional<double> coupling) {
            CorrelatorOptions o;
            o.n = n;
            o.m = order;
            o.rates = r;
            o.times = std::move(times);
            o.coupling = coupling;
            CorrelatorCurve c = correlator_curves(o);
            return py::dict(py::arg("times") = c.times, py::arg("exact") = c.exact,
                            py::arg("exact_perp") = c.exact_perp, py::arg("model") = c.model,
                            py::arg("model_perp") = c.model_perp, py::arg("bound") = c.single_ion_bound,
                            py::arg("p_leak") = c.p_leak);
        },
        py::arg("n"), py::arg("m"), py::arg("rates"), py::arg("times"), py::arg("coupling") = py::none());

    m.def(
        "spin_squeezing",
        [](py::array_t<double> shape, const ScatteringRates &r, double tau, std::vector<double> scan,
           std::size_t jobs) {
            SqueezeOptions o;
            o.shape = to_couplings(shape);
            o.rates = r;
            o.tau = tau;
            o.scan = std::move(scan);
            o.jobs = jobs;
            SqueezeResult s = spin_squeezing(o);
            return py::dict(py::arg("scan") = s.coupling_scan, py::arg("optimal") = s.optimal,
                            py::arg("noiseless_optimal") = s.noiseless_optimal,
                            py::arg("noisy_at_noiseless_opt") = s.noisy_at_noiseless_opt,
                            py::arg("p_leak_at_opt") = s.p_leak_at_opt);
        },
        py::arg("shape"), py::arg("rates"), py::arg("tau") = 0.5e-3, py::arg("scan") = std::vector<double>{},
        py::arg("jobs") = 1);

    m.def(
        "qaoa_single_layer",
        [](py::array_t<double> j, const ScatteringRates &r, std::size_t grid_points, const std::string &mode) {
            QaoaOptions o;
            o.couplings = to_couplings(j);
            o.rates = r;
            o.grid_points = grid_points;
            o.mode = to_mode(mode);
            QaoaResult q = qaoa_single_layer(o);
            py::array_t<double> costs({q.gammas.size(), q.betas.size()});
            std::copy(q.costs.begin(), q.costs.end(), costs.mutable_data());
            return py::dict(py::arg("gammas") = q.gammas, py::arg("betas") = q.betas, py::arg("costs") = costs,
                            py::arg("best_cost") = q.best_cost, py::arg("best_params") = q.best_params,
                            py::arg("noiseless_best_cost") = q.noiseless_best_cost,
                            py::arg("noiseless_best_params") = q.noiseless_best_params);
        },
        py::arg("couplings"), py::arg("rates"), py::arg("grid_points") = 101, py::arg("mode") = "plain");
}
