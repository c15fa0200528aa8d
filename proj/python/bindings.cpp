#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cgsp/datagen.hpp"
#include "cgsp/harness.hpp"
#include "cgsp/io.hpp"
#include "cgsp/linalg.hpp"
#include "cgsp/mkl.hpp"
#include "cgsp/version.hpp"

namespace py = pybind11;
using namespace cgsp;

namespace {

FeatureSet to_features(const ComplexMatrix& points) {
    FeatureSet features(static_cast<std::size_t>(points.rows()));
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        features[static_cast<std::size_t>(i)] = points.row(i).transpose();
    }
    return features;
}

ComplexMatrix from_features(const FeatureSet& features) {
    if (features.empty()) return ComplexMatrix(0, 0);
    ComplexMatrix out(static_cast<Eigen::Index>(features.size()), features.front().size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = features[i].transpose();
    }
    return out;
}

KernelMatrix wrap_kernel(const ComplexMatrix& k) { return KernelMatrix{k, "matrix"}; }

SpectralMap make_map(const std::string& kind, double sigma2, double b, int p,
                     const IndexSet& band, double mu, int n) {
    if (kind == "diffusion") return SpectralMap::diffusion(sigma2);
    if (kind == "randomwalk") return SpectralMap::random_walk(b, p);
    if (kind == "lapreg") return SpectralMap::laplacian_reg(sigma2);
    if (kind == "bandlimited") return SpectralMap::bandlimited(band, mu, n);
    throw_error(ErrorCode::InvalidSpec, "unknown spectral map '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_cgsp, m) {
    m.doc() = "kernel reconstruction of complex graph signals";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "CgspError");

    // linear algebra
    m.def("eig_hermitian", [](const ComplexMatrix& a) {
        const EigenDecomposition dec = eig_hermitian(a);
        return py::make_tuple(dec.eigenvalues, dec.vectors);
    });
    m.def("fractional_unitary_power", &fractional_unitary_power);
    m.def("pseudo_inverse", &pseudo_inverse, py::arg("a"), py::arg("rtol") = -1.0);

    // metrics and kernels
    m.def("metric_at", [](const std::string& metric, const FeatureVector& z) {
        return metric_at(MetricTensor::from_string(metric), z);
    });
    m.def("dist_euclidean", &dist_euclidean);
    m.def("dist_hermitian", [](const std::string& metric, const FeatureVector& a,
                               const FeatureVector& b) {
        return dist_hermitian(MetricTensor::from_string(metric), a, b);
    });
    m.def("kernel_eval", [](const std::string& spec, const FeatureVector& a,
                            const FeatureVector& b) {
        return kernel_eval(parse_kernel_spec(spec), a, b);
    });
    m.def("kernel_matrix", [](const std::string& spec, const ComplexMatrix& points) {
        return kernel_matrix(parse_kernel_spec(spec), to_features(points)).k;
    });

    // graph and spectrum
    py::class_<Graph>(m, "Graph")
        .def_readonly("w", &Graph::w)
        .def_readonly("degrees", &Graph::degrees)
        .def_readonly("laplacian", &Graph::laplacian)
        .def_readonly("laplacian_norm", &Graph::laplacian_norm)
        .def("size", &Graph::size);
    m.def("graph_from_kernel",
          [](const std::string& spec, const ComplexMatrix& points, int knn) {
              return graph_from_kernel(parse_kernel_spec(spec), to_features(points),
                                       SparsifyRule{knn});
          },
          py::arg("spec"), py::arg("points"), py::arg("knn") = 10);
    m.def("graph_from_adjacency", &Graph::from_adjacency);
    m.def("community_graph", &community_graph);

    py::class_<GraphSpectrum>(m, "GraphSpectrum")
        .def_property_readonly("eigenvalues",
                               [](const GraphSpectrum& s) { return s.eig.eigenvalues; })
        .def_property_readonly("vectors", [](const GraphSpectrum& s) { return s.eig.vectors; })
        .def_readonly("a", &GraphSpectrum::a)
        .def_readonly("ua", &GraphSpectrum::ua)
        .def_readonly("lambda_a", &GraphSpectrum::lambda_a)
        .def("size", &GraphSpectrum::size);
    m.def("spectrum", &spectrum, py::arg("graph"), py::arg("a") = 1.0,
          py::arg("normalized") = false);
    m.def("gfrft", &gfrft);
    m.def("inverse_gfrft", &inverse_gfrft);
    m.def("smoothness", &smoothness);
    m.def("band_projector", &band_projector);
    m.def("bandlimit_project", &bandlimit_project);
    m.def("localization_lambda_max", [](const GraphSpectrum& s, const IndexSet& vertices,
                                        const IndexSet& band) {
        const LocalizationCheck check =
            perfect_localization_check(localization_ops(s, vertices, band));
        return py::make_tuple(check.lambda_max, check.localized);
    });
    m.def("glk",
          [](const GraphSpectrum& s, const std::string& kind, double sigma2, double b, int p,
             const IndexSet& band, double mu) {
              return glk(s, make_map(kind, sigma2, b, p, band, mu, s.size())).k;
          },
          py::arg("spectrum"), py::arg("kind"), py::arg("sigma2") = 1.0, py::arg("b") = 2.0,
          py::arg("p") = 1, py::arg("band") = IndexSet{}, py::arg("mu") = 1e-2);

    // sampling and reconstruction
    py::class_<SamplingPlan>(m, "SamplingPlan")
        .def(py::init([](int n, const IndexSet& samples, double noise_std, std::uint64_t seed) {
                 SamplingPlan plan;
                 plan.n = n;
                 plan.samples = samples;
                 plan.noise_std = noise_std;
                 plan.seed = seed;
                 plan.validate();
                 return plan;
             }),
             py::arg("n"), py::arg("samples"), py::arg("noise_std") = 0.0, py::arg("seed") = 0)
        .def_static("uniform", &SamplingPlan::uniform, py::arg("n"), py::arg("m"),
                    py::arg("noise_std") = 0.0, py::arg("seed") = 0)
        .def_readonly("n", &SamplingPlan::n)
        .def_readonly("samples", &SamplingPlan::samples)
        .def_readonly("noise_std", &SamplingPlan::noise_std)
        .def_readonly("seed", &SamplingPlan::seed);
    m.def("sample", &sample);
    m.def("krr", [](const ComplexMatrix& k, const SamplingPlan& plan, const ComplexVector& y,
                    double gamma) {
        const KrrResult res = krr(wrap_kernel(k), plan, y, gamma);
        return py::make_tuple(res.f_opt, res.beta);
    });
    m.def("krr_objective", [](const ComplexMatrix& k, const SamplingPlan& plan,
                              const ComplexVector& y, double gamma, const ComplexVector& f) {
        return krr_objective(wrap_kernel(k), plan, y, gamma, f);
    });
    m.def("bandlimited_ridge", &bandlimited_ridge);
    m.def("nmse", &nmse);

    m.def("mkl_fit",
          [](const std::vector<ComplexMatrix>& kernels, const SamplingPlan& plan,
             const ComplexVector& y, double gamma, double nu, double eta, double eps,
             double radius, int max_iters, const RealVector& omega0) {
              KernelDictionary dict;
              for (const auto& k : kernels) dict.kernels.push_back(wrap_kernel(k));
              MklConfig cfg;
              cfg.gamma = gamma;
              cfg.nu = nu;
              cfg.eta = eta;
              cfg.eps = eps;
              cfg.radius = radius;
              cfg.max_iters = max_iters;
              cfg.omega0 = omega0;
              const MklResult res = mkl_fit(dict, plan, y, cfg);
              py::dict out;
              out["omega"] = res.omega;
              out["beta"] = res.beta;
              out["f_opt"] = res.f_opt;
              out["iterations"] = res.iterations;
              out["converged"] = res.converged;
              out["objective_trace"] = res.objective_trace;
              return out;
          },
          py::arg("kernels"), py::arg("plan"), py::arg("y"), py::arg("gamma") = 1e-4,
          py::arg("nu") = 1e-3, py::arg("eta") = 0.5, py::arg("eps") = 1e-6,
          py::arg("radius") = 1.0, py::arg("max_iters") = 200,
          py::arg("omega0") = RealVector());

    // data generation and fitting
    m.def("gen_features", [](const std::string& spec) {
        return from_features(gen_features(SyntheticGraphSpec::from_string(spec)));
    });
    m.def("gen_bandlimited_signal", &gen_bandlimited_signal);
    m.def("gen_signal_from_kernel", [](const ComplexMatrix& k, std::uint64_t seed) {
        return gen_signal_from_kernel(wrap_kernel(k), seed);
    });
    m.def("fit_rayleigh", [](const RealVector& x) {
        const RayleighFit fit = fit_rayleigh(x);
        py::dict out;
        out["sigma"] = fit.sigma;
        out["n"] = fit.n;
        return out;
    });
    m.def("fit_weibull", [](const RealVector& x) {
        const WeibullFit fit = fit_weibull(x);
        py::dict out;
        out["shape"] = fit.shape;
        out["scale"] = fit.scale;
        out["n"] = fit.n;
        out["iterations"] = fit.iterations;
        return out;
    });
    m.def("sample_rayleigh", &sample_rayleigh);
    m.def("sample_weibull", &sample_weibull);

    // harness
    m.def("run_experiment_file",
          [](const std::string& path, const std::string& out_dir) {
              ExperimentConfig cfg = ExperimentConfig::from_file(path);
              if (!out_dir.empty()) cfg.out_dir = out_dir;
              const ResultTable table = run_experiment(cfg);
              report(table, cfg, cfg.out_dir);
              py::list rows;
              for (const auto& cell : table.cells) {
                  py::dict row;
                  row["sweep_value"] = cell.sweep_value;
                  row["method"] = cell.method;
                  row["mean_nmse"] = cell.mean_nmse;
                  row["std_nmse"] = cell.std_nmse;
                  row["trials"] = cell.trials;
                  rows.append(row);
              }
              return rows;
          },
          py::arg("path"), py::arg("out_dir") = "");
}
