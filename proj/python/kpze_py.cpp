#include "kpze/airy_spectrum.hpp"
#include "kpze/bounds.hpp"
#include "kpze/ensembles.hpp"
#include "kpze/error.hpp"
#include "kpze/fredholm.hpp"
#include "kpze/painleve.hpp"
#include "kpze/pointstats.hpp"
#include "kpze/sample_io.hpp"
#include "kpze/specfun.hpp"
#include "kpze/verify.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kpze;

namespace {

py::array_t<double> points_array(const ensembles::EnsembleSample& s) {
    const std::size_t rows = s.configs.size();
    const std::size_t k = rows == 0 ? 0 : s.configs.front().points.size();
    py::array_t<double> out({rows, k});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t r = 0; r < rows; ++r) {
        if (s.configs[r].points.size() != k) throw InvalidArgument("ragged sample");
        for (std::size_t j = 0; j < k; ++j) view(r, j) = s.configs[r].points[j];
    }
    return out;
}

ensembles::EnsembleSample sample_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                                            std::uint64_t seed) {
    if (a.ndim() != 2) throw InvalidArgument("points must be a 2-d array (replicates, k)");
    auto view = a.unchecked<2>();
    ensembles::EnsembleSample s;
    s.seed = seed;
    s.k = view.shape(1);
    s.replicate_count = view.shape(0);
    for (py::ssize_t r = 0; r < view.shape(0); ++r) {
        std::vector<double> pts(view.shape(1));
        for (py::ssize_t j = 0; j < view.shape(1); ++j) pts[j] = view(r, j);
        s.configs.push_back(ensembles::PointConfiguration::synthetic(std::move(pts)));
    }
    return s;
}

}  // namespace

PYBIND11_MODULE(_kpze, m) {
    m.doc() = "GOE edge statistics, Painleve II and Airy-kernel Fredholm determinants";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    auto numeric = py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<TruncationError>(m, "TruncationError", numeric.ptr());

    // special functions
    m.def("airy_ai", &specfun::airy_ai, py::arg("x"));
    m.def("airy_ai_prime", &specfun::airy_ai_prime, py::arg("x"));
    m.def("airy_cdf", &specfun::airy_cdf, py::arg("x"), "integral of Ai over (-inf, x]");
    m.def("airy_tail", &specfun::airy_tail, py::arg("x"), "integral of Ai over [x, inf)");

    // spectrum
    m.def("airy_eigs", [](std::int64_t k_max, const std::string& method) {
        const auto m_ = method == "mt59" ? spectrum::SpectrumMethod::mt59_approx : spectrum::SpectrumMethod::airy_zero;
        if (method != "mt59" && method != "airy_zero") throw InvalidArgument("method must be airy_zero or mt59");
        return spectrum::airy_eigs(k_max, m_).eigenvalues;
    }, py::arg("k_max"), py::arg("method") = "airy_zero");
    m.def("count_eigs_below", &spectrum::count_eigs_below, py::arg("T"));

    // Painleve II
    m.def("f2_analytic", &painleve::f2_analytic, py::arg("s"), py::arg("v"), py::arg("tol") = 1e-8);
    m.def("f1_analytic", &painleve::f1_analytic, py::arg("s"), py::arg("v"), py::arg("tol") = 1e-8);
    m.def("mu_integral", &painleve::mu_integral, py::arg("s"), py::arg("gamma"), py::arg("tol") = 1e-8);
    m.def("solve_uas", [](double gamma, double x_min, double tol) {
        const auto sol = painleve::solve_uas(gamma, x_min, tol);
        py::dict d;
        d["x"] = sol.grid();
        d["u"] = sol.u();
        d["u_prime"] = sol.u_prime();
        d["residual"] = sol.residual();
        return d;
    }, py::arg("gamma"), py::arg("x_min"), py::arg("tol") = 1e-8);
    m.def("classify_region", [](double x, double gamma) {
        return std::string(painleve::to_string(painleve::classify_region(x, gamma)));
    }, py::arg("x"), py::arg("gamma"));

    // Fredholm
    m.def("fredholm_det_airy", &fredholm::fredholm_det_airy, py::arg("s"), py::arg("gamma"), py::arg("order") = 80);
    m.def("airy_kernel", &fredholm::airy_kernel, py::arg("x"), py::arg("y"));

    // samples
    py::class_<ensembles::EnsembleSample>(m, "EnsembleSample")
        .def_readonly("n", &ensembles::EnsembleSample::n)
        .def_readonly("seed", &ensembles::EnsembleSample::seed)
        .def_readonly("k", &ensembles::EnsembleSample::k)
        .def_property_readonly("replicates", [](const ensembles::EnsembleSample& s) { return s.configs.size(); })
        .def_property_readonly("points", &points_array)
        .def("save", [](const ensembles::EnsembleSample& s, const std::string& path, bool csv) {
            io::save_sample(path, s, csv);
        }, py::arg("path"), py::arg("csv") = false);
    m.def("sample_from_points", &sample_from_array, py::arg("points"), py::arg("seed") = 0);
    m.def("load_sample", &io::load_sample, py::arg("path"));
    m.def("sample_tridiag_edge", [](std::int64_t n, std::int64_t k, std::int64_t replicates, std::uint64_t seed,
                                    unsigned threads) {
        py::gil_scoped_release release;
        return ensembles::sample_tridiag_edge(n, k, replicates, seed, threads);
    }, py::arg("n"), py::arg("k"), py::arg("replicates"), py::arg("seed"), py::arg("threads") = 0);
    m.def("sample_sao_eigs", [](double beta, double L, double h, std::int64_t k, std::int64_t replicates,
                                std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        ensembles::SaoParams p;
        p.beta = beta;
        p.L = L;
        p.h = h;
        return ensembles::sample_sao_eigs(p, k, replicates, seed, threads);
    }, py::arg("beta") = 1.0, py::arg("L") = 20.0, py::arg("h") = 0.02, py::arg("k") = 1,
       py::arg("replicates") = 1000, py::arg("seed") = 0, py::arg("threads") = 0);

    // statistics
    py::class_<pointstats::McEstimate>(m, "McEstimate")
        .def_readonly("value", &pointstats::McEstimate::value)
        .def_readonly("std_error", &pointstats::McEstimate::std_error)
        .def_readonly("replicates", &pointstats::McEstimate::replicates)
        .def_readonly("low_power", &pointstats::McEstimate::low_power)
        .def_readonly("hits", &pointstats::McEstimate::hits)
        .def("__repr__", [](const pointstats::McEstimate& e) {
            return "McEstimate(value=" + io::format_double(e.value) + ", std_error=" + io::format_double(e.std_error) +
                   ", replicates=" + std::to_string(e.replicates) + ")";
        });
    m.def("rho1_goe", &pointstats::rho1_goe, py::arg("x"));
    m.def("mean_count", py::overload_cast<double>(&pointstats::mean_count), py::arg("s"));
    m.def("empirical_cgf", &pointstats::empirical_cgf, py::arg("sample"), py::arg("s"), py::arg("v"));
    m.def("thinned_max_cdf", &pointstats::thinned_max_cdf, py::arg("sample"), py::arg("s"), py::arg("gamma"),
          py::arg("seed"));
    m.def("laplace_functional", [](const ensembles::EnsembleSample& s, double sv, double T) {
        return pointstats::laplace_functional(s, sv, T);
    }, py::arg("sample"), py::arg("s"), py::arg("T"));
    m.def("tail_prob_max", &pointstats::tail_prob_max, py::arg("sample"), py::arg("s"));
    m.def("deviation_prob", [](const ensembles::EnsembleSample& s, double x, double c, const std::string& side,
                               std::int64_t block_k) {
        if (side != "lower" && side != "upper") throw InvalidArgument("side must be lower or upper");
        return pointstats::deviation_prob(s, pointstats::Interval::block(block_k, x), c,
                                          side == "lower" ? pointstats::Side::lower : pointstats::Side::upper);
    }, py::arg("sample"), py::arg("s"), py::arg("c"), py::arg("side") = "lower", py::arg("block_k") = 1);

    // bounds
    m.def("kpz_tail_bounds", [](double s, double T, double eps, double delta, bool calibrated) {
        const auto c = calibrated ? bounds::BoundConstants::calibrated() : bounds::BoundConstants::defaults();
        const auto r = bounds::kpz_tail_bounds(s, T, eps, delta, c);
        py::dict d;
        d["lower"] = r.lower();
        d["upper"] = r.upper();
        d["dominant_lower"] = r.dominant_lower;
        d["dominant_upper"] = r.dominant_upper;
        d["regime"] = bounds::to_string(r.regime);
        return d;
    }, py::arg("s"), py::arg("T"), py::arg("eps"), py::arg("delta"), py::arg("calibrated") = false);
    m.def("f1_bound_curve", &bounds::f1_bound_curve, py::arg("s"), py::arg("delta"));

    // verification
    m.def("run_verify", [](const std::string& suite, std::uint64_t seed, std::int64_t replicates) {
        verify::VerifyOptions o;
        o.suite = verify::parse_suite(suite);
        o.seed = seed;
        o.replicates = replicates;
        std::string json;
        {
            py::gil_scoped_release release;
            json = verify::run_verify(o).to_json();
        }
        return json;
    }, py::arg("suite") = "fast", py::arg("seed") = 0, py::arg("replicates") = 0,
       "Runs the verification suite and returns the JSON report.");
}
