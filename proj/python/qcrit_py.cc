// Copyright 2026 The qcrit Authors
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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcrit/bounds.h"
#include "qcrit/coupling.h"
#include "qcrit/criteria.h"
#include "qcrit/discrimination.h"
#include "qcrit/ensembles.h"
#include "qcrit/error.h"
#include "qcrit/experiments.h"
#include "qcrit/sidechannel.h"

namespace py = pybind11;
using namespace qcrit;

namespace {

nlohmann::json to_json(const py::object &obj) {
    if (obj.is_none()) {
        return nlohmann::json::object();
    }
    if (py::isinstance<py::str>(obj)) {
        return nlohmann::json::parse(obj.cast<std::string>());
    }
    std::string text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return nlohmann::json::parse(text);
}

py::object from_json(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

ProbDist dist_from_dict(const std::map<std::string, double> &d) {
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (const auto &[k, v] : d) {
        labels.push_back(k);
        probs.push_back(v);
    }
    return ProbDist(std::move(labels), std::move(probs));
}

CqEnsemble make_ensemble(const std::vector<ComplexMatrix> &probes, std::optional<std::vector<double>> prior) {
    int n = 0;
    while ((size_t{1} << n) < probes.size()) {
        n++;
    }
    if ((size_t{1} << n) != probes.size()) {
        throw Error(ErrorCode::BadParams, "number of probes must be a power of two");
    }
    std::vector<std::string> keys = all_keys(n);
    std::vector<DensityOperator> states;
    for (const auto &p : probes) {
        states.push_back(validate_density(p));
    }
    ProbDist pd = prior ? ProbDist(keys, *prior) : ProbDist::uniform(keys);
    return CqEnsemble(n, std::move(pd), std::move(states));
}

}  // namespace

PYBIND11_MODULE(qcrit, m) {
    m.doc() = "Trace-distance key criterion analysis toolkit.";
    m.attr("__version__") = std::string(version());

    static py::exception<Error> error_type(m, "QcritError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            PyErr_SetString(error_type.ptr(), e.what());
        } catch (const nlohmann::json::exception &e) {
            PyErr_SetString(error_type.ptr(), (std::string("ParseError: ") + e.what()).c_str());
        }
    });

    m.def(
        "trace_distance",
        [](const ComplexMatrix &a, const ComplexMatrix &b) {
            return trace_distance(validate_density(a), validate_density(b));
        },
        py::arg("rho"), py::arg("sigma"), "Half the trace norm of rho - sigma.");
    m.def("trace_norm", &trace_norm, py::arg("a"));
    m.def(
        "helstrom",
        [](const ComplexMatrix &a, const ComplexMatrix &b, double p0) {
            return helstrom_binary(validate_density(a), validate_density(b), p0).p_success;
        },
        py::arg("rho0"), py::arg("rho1"), py::arg("p0") = 0.5, "Optimal success probability for two states.");

    m.def(
        "criterion_d",
        [](const std::vector<ComplexMatrix> &probes, std::optional<std::vector<double>> prior) {
            return criterion_d_averaged(make_ensemble(probes, prior));
        },
        py::arg("probes"), py::arg("prior") = py::none(),
        "Averaged d for probes indexed by key (len must be a power of two).");
    m.def(
        "criterion_d_entangled",
        [](const std::vector<ComplexMatrix> &probes, std::optional<std::vector<double>> prior) {
            return criterion_d_entangled(make_ensemble(probes, prior));
        },
        py::arg("probes"), py::arg("prior") = py::none());
    m.def(
        "two_bit_family_d",
        [](const ComplexMatrix &sigma, const ComplexMatrix &rho1, const ComplexMatrix &rho2) {
            return criterion_d_averaged(
                two_bit_pkl_example(validate_density(sigma), validate_density(rho1), validate_density(rho2)));
        },
        py::arg("sigma"), py::arg("rho1"), py::arg("rho2"));
    m.def(
        "post_leak_success",
        [](const ComplexMatrix &sigma, const ComplexMatrix &rho1, const ComplexMatrix &rho2, int leaked_bit) {
            auto e = two_bit_pkl_example(validate_density(sigma), validate_density(rho1), validate_density(rho2));
            auto r = post_leak_discrimination(e, LeakSpec{{0}, {leaked_bit}});
            return py::dict(py::arg("p_success") = r.p_success, py::arg("d") = r.d_full,
                            py::arg("mixture_cap") = r.mixture_cap);
        },
        py::arg("sigma"), py::arg("rho1"), py::arg("rho2"), py::arg("leaked_bit") = 0);

    m.def(
        "variational_distance",
        [](const std::map<std::string, double> &p, const std::map<std::string, double> &q) {
            return variational_distance(dist_from_dict(p), dist_from_dict(q));
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "independent_mismatch",
        [](size_t n) {
            ProbDist u = ProbDist::uniform_indexed(n);
            return mismatch_probability(independent_coupling(u, u));
        },
        py::arg("n"), "Mismatch of the independent coupling of two uniform variables over n values.");
    m.def(
        "maximal_mismatch",
        [](const std::map<std::string, double> &p, const std::map<std::string, double> &q) {
            return mismatch_probability(maximal_coupling(dist_from_dict(p), dist_from_dict(q)));
        },
        py::arg("p"), py::arg("q"));

    m.def(
        "gf2_rank", [](const std::vector<std::string> &rows) { return gf2_rank(Gf2Matrix::from_rows(rows)); },
        py::arg("rows"));
    m.def(
        "pac_leakage", [](const std::vector<std::string> &rows) { return pac_leakage(Gf2Matrix::from_rows(rows)); },
        py::arg("rows"));
    m.def(
        "toeplitz",
        [](const std::vector<uint8_t> &seed, size_t rows, size_t cols) {
            return toeplitz_from_seed(seed, rows, cols).to_rows();
        },
        py::arg("seed"), py::arg("m"), py::arg("n"));
    m.def(
        "singular_fraction",
        [](size_t rows, size_t cols, std::optional<uint64_t> samples, uint64_t seed) {
            auto f = singular_fraction(rows, cols,
                                       samples ? SingularMode::sample(*samples, seed) : SingularMode::exhaustive());
            return py::dict(py::arg("fraction") = f.fraction, py::arg("evaluated") = f.evaluated,
                            py::arg("singular") = f.singular, py::arg("standard_error") = f.standard_error);
        },
        py::arg("m"), py::arg("n"), py::arg("samples") = py::none(), py::arg("seed") = 0);
    m.def(
        "region_census",
        [](const std::vector<std::string> &generator, const std::string &rule) {
            DecodeRule r = rule == "syndrome" ? DecodeRule::Syndrome : DecodeRule::MinDistanceFirstTiebreak;
            if (rule != "syndrome" && rule != "min_distance") {
                throw Error(ErrorCode::ParseError, "rule must be syndrome or min_distance");
            }
            auto c = decision_region_census(LinearCode(Gf2Matrix::from_rows(generator)), r);
            return py::make_tuple(c.region_sizes, c.bias_delta);
        },
        py::arg("generator"), py::arg("rule") = "syndrome", "Returns (region sizes by message, bias delta).");

    m.def("markov_bound", &markov_bound, py::arg("mean"), py::arg("threshold"));
    m.def(
        "chained_budget",
        [](double eps, double delta, int count) { return chained_individual_guarantee(eps, delta, count).required_average; },
        py::arg("eps"), py::arg("delta"), py::arg("count") = 1);
    m.def(
        "log2_ratio",
        [](int n, int l, int m_len, double epsilon) {
            return uniform_comparison_table({n, l, m_len, epsilon, 0.0}).front().log2_ratio;
        },
        py::arg("n"), py::arg("l"), py::arg("m"), py::arg("epsilon"));

    m.def("experiment_names", &experiment_names);
    m.def(
        "run_experiment",
        [](const std::string &name, const py::object &params, uint64_t seed) {
            return from_json(to_json(run_experiment(name, to_json(params), seed), false));
        },
        py::arg("name"), py::arg("params") = py::none(), py::arg("seed") = 0,
        "Runs a named experiment and returns its report as a dict.");
    m.def(
        "canonical_report",
        [](const std::string &name, const py::object &params, uint64_t seed) {
            return canonical_json(run_experiment(name, to_json(params), seed));
        },
        py::arg("name"), py::arg("params") = py::none(), py::arg("seed") = 0);
    m.def(
        "run_sweep",
        [](const std::string &target, const py::object &grid, const py::object &fixed, uint64_t seed,
           unsigned threads) { return run_sweep_csv(target, to_json(grid), to_json(fixed), seed, threads); },
        py::arg("target"), py::arg("grid"), py::arg("fixed") = py::none(), py::arg("seed") = 0,
        py::arg("threads") = 0, "Runs a parameter sweep and returns CSV text.");
}
