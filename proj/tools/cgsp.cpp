#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cgsp/harness.hpp"
#include "cgsp/io.hpp"
#include "cgsp/rng.hpp"
#include "cgsp/version.hpp"

namespace {

using namespace cgsp;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::ConfigInvalid:
        case ErrorCode::InvalidSpec:
            return 2;
        default:
            return 1;
    }
}

struct RunArgs {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    int trials = -1;
};

int cmd_run(const RunArgs& args) {
    ExperimentConfig cfg = ExperimentConfig::from_file(args.config_path);
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
    if (args.trials > 0) cfg.trials = args.trials;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    cfg.validate();

    const ResultTable table = run_experiment(cfg);
    report(table, cfg, cfg.out_dir);

    std::printf("# %s %s, seed %llu, %d trial(s)\n", kToolName, kVersion,
                static_cast<unsigned long long>(cfg.seed), cfg.trials);
    for (const auto& cell : table.cells) {
        std::printf("sweep=%g method=%s mean_nmse=%.6g std_nmse=%.6g trials=%d\n",
                    cell.sweep_value, cell.method.c_str(), cell.mean_nmse, cell.std_nmse,
                    cell.trials);
    }
    for (const auto& [method, count] : table.failures) {
        std::printf("failures method=%s count=%d\n", method.c_str(), count);
    }
    std::printf("wrote %s/results.csv and results.json\n", cfg.out_dir.c_str());
    return 0;
}

struct GenArgs {
    std::string spec;
    std::string out;
    std::string graph_out;
    std::string signal_out;
    std::string signal = "component:0";
    std::string graph_kernel = "egk:sigma=0.5";
    int knn = 10;
    bool normalized = false;
};

int cmd_gen(const GenArgs& args) {
    const SyntheticGraphSpec spec = SyntheticGraphSpec::from_string(args.spec);
    const FeatureSet features = gen_features(spec);
    write_features_csv(args.out, features);
    std::printf("wrote %zu features to %s\n", features.size(), args.out.c_str());

    const bool needs_graph = !args.graph_out.empty() ||
                             (!args.signal_out.empty() &&
                              args.signal.rfind("bandlimited", 0) == 0);
    Graph graph;
    if (needs_graph) {
        graph = gen_graph(spec, parse_kernel_spec(args.graph_kernel), SparsifyRule{args.knn});
    }
    if (!args.graph_out.empty()) {
        write_edge_list_csv(args.graph_out, graph);
        std::printf("wrote graph edges to %s\n", args.graph_out.c_str());
    }
    if (args.signal_out.empty()) return 0;

    ComplexVector f;
    if (args.signal.rfind("component:", 0) == 0) {
        f = feature_component(features, static_cast<int>(std::stod(args.signal.substr(10))));
    } else if (args.signal.rfind("bandlimited:", 0) == 0) {
        int band = 0;
        double a = 1.0;
        std::size_t start = 12;
        const std::string body = args.signal;
        while (start <= body.size()) {
            std::size_t colon = body.find(':', start);
            const std::string seg = colon == std::string::npos
                                        ? body.substr(start)
                                        : body.substr(start, colon - start);
            if (seg.rfind("F=", 0) == 0) band = static_cast<int>(std::stod(seg.substr(2)));
            else if (seg.rfind("a=", 0) == 0) a = std::stod(seg.substr(2));
            else throw_error(ErrorCode::InvalidSpec, "bad signal segment '" + seg + "'");
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        const GraphSpectrum s = spectrum(graph, a, args.normalized);
        f = gen_bandlimited_signal(s, top_band(band));
    } else if (args.signal.rfind("kernel:", 0) == 0) {
        std::uint64_t alpha_seed = 1;
        std::string kernel_text;
        for (const auto& seg : [&] {
                 std::vector<std::string> parts;
                 std::size_t start = 7;
                 while (start <= args.signal.size()) {
                     const std::size_t colon = args.signal.find(':', start);
                     if (colon == std::string::npos) {
                         parts.push_back(args.signal.substr(start));
                         break;
                     }
                     parts.push_back(args.signal.substr(start, colon - start));
                     start = colon + 1;
                 }
                 return parts;
             }()) {
            if (seg.rfind("alpha_seed=", 0) == 0) {
                alpha_seed = static_cast<std::uint64_t>(std::stoull(seg.substr(11)));
                continue;
            }
            if (!kernel_text.empty()) kernel_text += ':';
            kernel_text += seg;
        }
        const KernelMatrix k = kernel_matrix(parse_kernel_spec(kernel_text), features);
        f = gen_signal_from_kernel(k, derive_seed(spec.seed, {alpha_seed}));
    } else {
        throw_error(ErrorCode::InvalidSpec, "unknown signal spec '" + args.signal + "'");
    }
    write_signal_csv(args.signal_out, f);
    std::printf("wrote signal to %s\n", args.signal_out.c_str());
    return 0;
}

struct FitArgs {
    std::string data;
    std::string reconstructed;
    std::string out_dir;
    bool preprocess = false;
    int grid = 512;
};

int cmd_fit_dist(const FitArgs& args) {
    const IngestResult ingested = ingest_complex_csv(args.data, args.preprocess);
    const DistFits fits = fit_distributions(ingested.signal);

    nlohmann::ordered_json j;
    j["rayleigh"] = {{"sigma", fits.rayleigh.sigma}, {"n", fits.rayleigh.n}};
    j["weibull"] = {{"shape", fits.weibull.shape},
                    {"scale", fits.weibull.scale},
                    {"n", fits.weibull.n},
                    {"iterations", fits.weibull.iterations}};
    j["ingest"] = {{"preprocessed", ingested.meta.preprocessed},
                   {"shifted_components", ingested.meta.shifted_components},
                   {"max_magnitude", ingested.meta.max_magnitude}};
    std::cout << j.dump(2) << "\n";

    if (!args.out_dir.empty()) {
        ComplexVector recon = ingested.signal;
        if (!args.reconstructed.empty()) {
            recon = ingest_complex_csv(args.reconstructed, args.preprocess).signal;
        }
        dist_report(ingested.signal, recon, args.out_dir, args.grid);
        std::printf("wrote %s/dist_cdf.csv and dist_pdf.csv\n", args.out_dir.c_str());
    }
    return 0;
}

struct ReconstructArgs {
    std::string features_path;
    std::string signal_path;
    std::string method = "egk:sigma=0.5";
    std::string out;
    std::string graph_kernel = "egk:sigma=0.5";
    std::vector<std::string> mkl_kernels;
    int knn = 10;
    bool normalized = false;
    int samples = 0;
    double gamma = 0.01;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
    double mkl_gamma = 1e-4;
    double mkl_nu = 1e-3;
    double mkl_eta = 0.5;
    double mkl_eps = 1e-6;
    double mkl_radius = 1.0;
    int mkl_max_iters = 200;
};

int cmd_reconstruct(const ReconstructArgs& args) {
    const FeatureSet features = read_features_csv(args.features_path);
    const ComplexVector f = read_signal_csv(args.signal_path);
    const int n = static_cast<int>(f.size());
    if (static_cast<int>(features.size()) != n) {
        throw_error(ErrorCode::DimensionMismatch, "feature and signal lengths differ");
    }
    const MethodSpec method = MethodSpec::parse(args.method);
    const int m_count = args.samples > 0 ? args.samples : n;
    const SamplingPlan plan = SamplingPlan::uniform(n, m_count, args.noise_std, args.seed);
    const ComplexVector y = sample(plan, f);
    const double gamma = method.gamma >= 0.0 ? method.gamma : args.gamma;

    Graph graph;
    const bool needs_graph =
        method.needs_spectrum() ||
        (method.route == MethodSpec::Route::Mkl && !args.mkl_kernels.empty() &&
         [&] {
             for (const auto& text : args.mkl_kernels) {
                 if (MethodSpec::parse(text).needs_spectrum()) return true;
             }
             return false;
         }());
    if (needs_graph) {
        graph = graph_from_kernel(parse_kernel_spec(args.graph_kernel), features,
                                  SparsifyRule{args.knn});
    }

    ComplexVector f_hat;
    switch (method.route) {
        case MethodSpec::Route::TraditionalKrr: {
            const KernelMatrix k = kernel_matrix(method.kernel, features);
            f_hat = krr(k, plan, y, gamma).f_opt;
            break;
        }
        case MethodSpec::Route::GraphKrr: {
            const GraphSpectrum s = spectrum(graph, method.a, args.normalized);
            SpectralMap map =
                method.map_is_bandlimited
                    ? SpectralMap::bandlimited(top_band(method.band_count), method.mu, n)
                    : (method.map_kind == SpectralMap::Kind::Diffusion
                           ? SpectralMap::diffusion(method.sigma2)
                           : (method.map_kind == SpectralMap::Kind::RandomWalk
                                  ? SpectralMap::random_walk(method.b, method.p)
                                  : SpectralMap::laplacian_reg(method.sigma2)));
            f_hat = krr(glk(s, map), plan, y, gamma).f_opt;
            break;
        }
        case MethodSpec::Route::BandRidge: {
            const GraphSpectrum s = spectrum(graph, method.a, args.normalized);
            f_hat = bandlimited_ridge(s, top_band(method.band_count), method.mu, gamma, plan, y);
            break;
        }
        case MethodSpec::Route::Mkl: {
            if (args.mkl_kernels.empty()) {
                throw_error(ErrorCode::ConfigInvalid,
                            "mkl reconstruction needs --mkl-kernel entries");
            }
            KernelDictionary dict;
            for (const auto& text : args.mkl_kernels) {
                const MethodSpec entry = MethodSpec::parse(text);
                if (entry.route == MethodSpec::Route::TraditionalKrr) {
                    dict.kernels.push_back(kernel_matrix(entry.kernel, features));
                } else if (entry.route == MethodSpec::Route::GraphKrr ||
                           entry.route == MethodSpec::Route::BandRidge) {
                    const GraphSpectrum s = spectrum(graph, entry.a, args.normalized);
                    SpectralMap map =
                        entry.map_is_bandlimited
                            ? SpectralMap::bandlimited(top_band(entry.band_count), entry.mu, n)
                            : (entry.map_kind == SpectralMap::Kind::Diffusion
                                   ? SpectralMap::diffusion(entry.sigma2)
                                   : (entry.map_kind == SpectralMap::Kind::RandomWalk
                                          ? SpectralMap::random_walk(entry.b, entry.p)
                                          : SpectralMap::laplacian_reg(entry.sigma2)));
                    dict.kernels.push_back(glk(s, map));
                } else {
                    throw_error(ErrorCode::ConfigInvalid, "mkl dictionary cannot contain mkl");
                }
            }
            MklConfig mc;
            mc.gamma = args.mkl_gamma;
            mc.nu = args.mkl_nu;
            mc.eta = args.mkl_eta;
            mc.eps = args.mkl_eps;
            mc.radius = args.mkl_radius;
            mc.max_iters = args.mkl_max_iters;
            f_hat = mkl_fit(dict, plan, y, mc).f_opt;
            break;
        }
    }

    std::printf("nmse=%.12g samples=%d gamma=%g noise_std=%g seed=%llu\n", nmse(f_hat, f),
                m_count, gamma, args.noise_std, static_cast<unsigned long long>(args.seed));
    if (!args.out.empty()) {
        write_signal_csv(args.out, f_hat);
        std::printf("wrote reconstruction to %s\n", args.out.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel reconstruction of complex graph signals"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run a sweep experiment from a config file");
    run->add_option("config", run_args.config_path, "experiment config file")->required();
    run->add_option("--seed", run_args.seed, "override the experiment seed");
    run->add_option("--trials", run_args.trials, "override the trial count");
    run->add_option("--out-dir", run_args.out_dir, "override the output directory");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate synthetic features/graph/signal CSVs");
    gen->add_option("spec", gen_args.spec, "generator spec, e.g. swiss_roll:n=200:seed=7")
        ->required();
    gen->add_option("--out", gen_args.out, "features CSV path")->required();
    gen->add_option("--graph-out", gen_args.graph_out, "edge list CSV path");
    gen->add_option("--signal-out", gen_args.signal_out, "signal CSV path");
    gen->add_option("--signal", gen_args.signal,
                    "signal spec: component:IDX | bandlimited:F=..:a=.. | kernel:<spec>");
    gen->add_option("--graph-kernel", gen_args.graph_kernel, "similarity kernel spec");
    gen->add_option("--knn", gen_args.knn, "k-NN sparsification (0 keeps dense)");
    gen->add_flag("--normalized", gen_args.normalized, "use the normalized laplacian");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit-dist", "fit magnitude distributions to a signal CSV");
    fit->add_option("data", fit_args.data, "signal CSV (index,re,im)")->required();
    fit->add_option("--reconstructed", fit_args.reconstructed, "reconstructed signal CSV");
    fit->add_option("--out-dir", fit_args.out_dir, "directory for dist_cdf/dist_pdf CSVs");
    fit->add_flag("--preprocess", fit_args.preprocess,
                  "lift negative byte components by 256 and normalize magnitudes");
    fit->add_option("--grid", fit_args.grid, "grid points for the report");

    ReconstructArgs rec_args;
    auto* rec = app.add_subcommand("reconstruct", "reconstruct a signal from vertex samples");
    rec->add_option("--features", rec_args.features_path, "features CSV")->required();
    rec->add_option("--signal", rec_args.signal_path, "signal CSV")->required();
    rec->add_option("--kernel,--method", rec_args.method, "kernel/method spec (see run config docs)");
    rec->add_option("--samples", rec_args.samples, "observed sample count (default all)");
    rec->add_option("--gamma", rec_args.gamma, "ridge weight");
    rec->add_option("--noise-std", rec_args.noise_std, "observation noise std");
    rec->add_option("--seed", rec_args.seed, "sampling/noise seed");
    rec->add_option("--out", rec_args.out, "write the reconstruction CSV here");
    rec->add_option("--graph-kernel", rec_args.graph_kernel, "similarity kernel spec");
    rec->add_option("--knn", rec_args.knn, "k-NN sparsification (0 keeps dense)");
    rec->add_flag("--normalized", rec_args.normalized, "use the normalized laplacian");
    rec->add_option("--mkl-kernel", rec_args.mkl_kernels, "mkl dictionary entry (repeatable)");
    rec->add_option("--mkl-gamma", rec_args.mkl_gamma, "mkl ridge weight");
    rec->add_option("--mkl-nu", rec_args.mkl_nu, "mkl l1 penalty");
    rec->add_option("--mkl-eta", rec_args.mkl_eta, "mkl beta averaging factor");
    rec->add_option("--mkl-eps", rec_args.mkl_eps, "mkl stop tolerance");
    rec->add_option("--mkl-radius", rec_args.mkl_radius, "mkl weight trust region");
    rec->add_option("--mkl-max-iters", rec_args.mkl_max_iters, "mkl iteration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(run_args);
        if (app.got_subcommand(gen)) return cmd_gen(gen_args);
        if (app.got_subcommand(fit)) return cmd_fit_dist(fit_args);
        if (app.got_subcommand(rec)) return cmd_reconstruct(rec_args);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
