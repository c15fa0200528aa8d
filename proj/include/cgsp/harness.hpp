#pragma once

#include <map>
#include <string>
#include <vector>

#include "cgsp/config.hpp"
#include "cgsp/datagen.hpp"
#include "cgsp/mkl.hpp"
#include "cgsp/reconstruct.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

// Reconstruction method spec strings:
//   "egk:sigma=0.5" (and hgk/elk/hlk/pk)   kernel ridge on the feature kernel
//   "glk:diffusion:sigma2=1:a=0.9"         kernel ridge on the graph kernel
//   "glk:randomwalk:b=2:p=1:a=1"
//   "glk:lapreg:sigma2=1:a=0.9"
//   "gbk:F=40:mu=1e-2:a=0.9"               bandlimited ridge, top-F band
//   "krr:gbk:F=40:mu=1e-2:a=0.9"           kernel ridge on the bandlimited kernel
//   "mkl"                                  multi-kernel fit over the dictionary
// Every method accepts a trailing ":gamma=..." override of the experiment
// default ridge weight.
struct MethodSpec {
    enum class Route { TraditionalKrr, GraphKrr, BandRidge, Mkl };

    Route route = Route::TraditionalKrr;
    std::string label;
    double gamma = -1.0;  // < 0 means experiment default

    KernelSpec kernel;  // TraditionalKrr

    // graph-spectral routes
    SpectralMap::Kind map_kind = SpectralMap::Kind::Diffusion;
    double sigma2 = 1.0;
    double b = 2.0;
    int p = 1;
    bool map_is_bandlimited = false;
    int band_count = 0;
    double mu = 1e-2;
    double a = 1.0;

    static MethodSpec parse(const std::string& text);

    bool needs_spectrum() const {
        return route == Route::GraphKrr || route == Route::BandRidge;
    }
};

struct ExperimentConfig {
    enum class SweepAxis { SampleSizes, FractionalOrders, Sigmas };
    enum class SignalType { Bandlimited, Kernel, Component };

    SyntheticGraphSpec generator;
    std::uint64_t seed = 0;
    int trials = 1;
    double noise_std = 0.0;
    double gamma = 0.01;
    SweepAxis axis = SweepAxis::SampleSizes;
    std::vector<double> sweep;
    int sample_size = 0;  // |S| when the axis is not sample_sizes
    std::vector<MethodSpec> methods;
    std::vector<MethodSpec> mkl_kernels;  // dictionary; empty selects all non-mkl methods

    KernelSpec graph_kernel;  // similarity graph construction
    int knn = 10;
    bool normalized = false;

    SignalType signal_type = SignalType::Bandlimited;
    int signal_band = 0;
    double signal_a = 1.0;
    KernelSpec signal_kernel;
    std::uint64_t alpha_seed = 1;
    int signal_component = 0;

    MklConfig mkl;
    std::string out_dir = "out";
    std::string raw_text;

    static ExperimentConfig from_node(const ConfigNode& node, const std::string& raw);
    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_text(const std::string& text);
    void validate() const;
};

struct ResultCell {
    double sweep_value = 0.0;
    std::string method;
    double mean_nmse = 0.0;
    double std_nmse = 0.0;
    int trials = 0;  // successful trials behind the stats
};

struct ResultTable {
    std::vector<double> sweep_values;
    std::vector<std::string> methods;
    std::vector<ResultCell> cells;  // sweep-major, method order; failed cells omitted
    std::map<std::string, int> failures;

    const ResultCell* find(double sweep_value, const std::string& method) const;
};

// Runs the sweep: one shared graph/signal, per-trial paired sampling plans,
// per-method reconstruction, NMSE statistics. Per-trial failures are counted
// and skipped rather than aborting the run.
ResultTable run_experiment(const ExperimentConfig& cfg);

// results.csv + results.json under out_dir; byte-stable for a fixed config.
void report(const ResultTable& table, const ExperimentConfig& cfg, const std::string& out_dir);

struct DistFits {
    RayleighFit rayleigh;
    WeibullFit weibull;
};

// MLE fits of the magnitude distribution of a complex signal.
DistFits fit_distributions(const ComplexVector& signal);

// dist_cdf.csv / dist_pdf.csv on a shared magnitude grid: empirical columns
// for both signals plus the fitted Rayleigh/Weibull curves.
void dist_report(const ComplexVector& original, const ComplexVector& reconstructed,
                 const std::string& out_dir, int grid_points = 512);

// {0, 1, ..., count-1}: the top of the descending spectrum.
IndexSet top_band(int count);

}  // namespace cgsp
