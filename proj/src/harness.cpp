#include "cgsp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cgsp/io.hpp"
#include "cgsp/rng.hpp"
#include "cgsp/version.hpp"

namespace cgsp {

IndexSet top_band(int count) {
    if (count < 1) throw_error(ErrorCode::EmptyBandSet, "band count must be >= 1");
    IndexSet band(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) band[static_cast<std::size_t>(i)] = i;
    return band;
}

namespace {

std::vector<std::string> split_colon(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t colon = text.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    return parts;
}

double spec_num(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw_error(ErrorCode::InvalidSpec, "bad " + what + " '" + text + "'");
    }
}

// Pulls "gamma=.." out of a method string so the remainder can be handed to
// the kernel spec parser.
std::string extract_gamma(const std::string& text, double* gamma) {
    std::string rest;
    for (const auto& seg : split_colon(text)) {
        if (seg.rfind("gamma=", 0) == 0) {
            *gamma = spec_num(seg.substr(6), "gamma");
            continue;
        }
        if (!rest.empty()) rest += ':';
        rest += seg;
    }
    return rest;
}

MethodSpec parse_glk_method(const std::string& text, const std::vector<std::string>& parts) {
    if (parts.size() < 2) throw_error(ErrorCode::InvalidSpec, "glk spec needs a map name");
    MethodSpec m;
    m.route = MethodSpec::Route::GraphKrr;
    m.label = text;
    const std::string& map_name = parts[1];
    if (map_name == "diffusion") m.map_kind = SpectralMap::Kind::Diffusion;
    else if (map_name == "randomwalk") m.map_kind = SpectralMap::Kind::RandomWalk;
    else if (map_name == "lapreg") m.map_kind = SpectralMap::Kind::LaplacianReg;
    else throw_error(ErrorCode::InvalidSpec, "unknown spectral map '" + map_name + "'");
    for (std::size_t i = 2; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos) {
            throw_error(ErrorCode::InvalidSpec, "bad glk segment '" + parts[i] + "'");
        }
        const std::string key = parts[i].substr(0, eq);
        const std::string value = parts[i].substr(eq + 1);
        if (key == "sigma2") m.sigma2 = spec_num(value, "sigma2");
        else if (key == "b") m.b = spec_num(value, "b");
        else if (key == "p") m.p = static_cast<int>(spec_num(value, "p"));
        else if (key == "a") m.a = spec_num(value, "a");
        else if (key == "gamma") m.gamma = spec_num(value, "gamma");
        else throw_error(ErrorCode::InvalidSpec, "unknown glk key '" + key + "'");
    }
    return m;
}

MethodSpec parse_gbk_fields(const std::string& text, const std::vector<std::string>& parts,
                            MethodSpec::Route route) {
    MethodSpec m;
    m.route = route;
    m.label = text;
    m.map_is_bandlimited = true;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos) {
            throw_error(ErrorCode::InvalidSpec, "bad gbk segment '" + parts[i] + "'");
        }
        const std::string key = parts[i].substr(0, eq);
        const std::string value = parts[i].substr(eq + 1);
        if (key == "F") m.band_count = static_cast<int>(spec_num(value, "F"));
        else if (key == "mu") m.mu = spec_num(value, "mu");
        else if (key == "a") m.a = spec_num(value, "a");
        else if (key == "gamma") m.gamma = spec_num(value, "gamma");
        else throw_error(ErrorCode::InvalidSpec, "unknown gbk key '" + key + "'");
    }
    if (m.band_count < 1) throw_error(ErrorCode::InvalidSpec, "gbk spec needs F >= 1");
    if (!(m.mu > 0.0)) throw_error(ErrorCode::InvalidSpec, "gbk spec needs mu > 0");
    return m;
}

}  // namespace

MethodSpec MethodSpec::parse(const std::string& text) {
    if (text.empty()) throw_error(ErrorCode::InvalidSpec, "empty method spec");
    const auto parts = split_colon(text);
    const std::string& head = parts[0];

    if (head == "mkl") {
        if (parts.size() > 1) {
            throw_error(ErrorCode::InvalidSpec, "mkl takes its settings from the mkl block");
        }
        MethodSpec m;
        m.route = Route::Mkl;
        m.label = text;
        return m;
    }
    if (head == "glk") return parse_glk_method(text, parts);
    if (head == "gbk") return parse_gbk_fields(text, parts, Route::BandRidge);
    if (head == "krr") {
        if (parts.size() < 2) throw_error(ErrorCode::InvalidSpec, "krr: needs a kernel spec");
        const std::string inner = text.substr(4);
        MethodSpec m;
        if (parts[1] == "gbk") {
            m = parse_gbk_fields(inner, split_colon(inner), Route::GraphKrr);
        } else {
            m = parse(inner);
            if (m.route != Route::TraditionalKrr && m.route != Route::GraphKrr) {
                throw_error(ErrorCode::InvalidSpec, "krr: needs a kernel-backed spec");
            }
        }
        m.label = text;
        return m;
    }

    MethodSpec m;
    m.route = Route::TraditionalKrr;
    m.label = text;
    double gamma = -1.0;
    const std::string kernel_text = extract_gamma(text, &gamma);
    m.gamma = gamma;
    m.kernel = parse_kernel_spec(kernel_text);
    return m;
}

namespace {

SpectralMap method_map(const MethodSpec& m, int n) {
    if (m.map_is_bandlimited) {
        if (m.band_count > n) {
            throw_error(ErrorCode::IndexOutOfRange, "band count exceeds graph size");
        }
        return SpectralMap::bandlimited(top_band(m.band_count), m.mu, n);
    }
    switch (m.map_kind) {
        case SpectralMap::Kind::Diffusion: return SpectralMap::diffusion(m.sigma2);
        case SpectralMap::Kind::RandomWalk: return SpectralMap::random_walk(m.b, m.p);
        case SpectralMap::Kind::LaplacianReg: return SpectralMap::laplacian_reg(m.sigma2);
        case SpectralMap::Kind::Bandlimited: break;
    }
    throw_error(ErrorCode::InvalidSpec, "unreachable spectral map route");
}

const char* axis_name(ExperimentConfig::SweepAxis axis) {
    switch (axis) {
        case ExperimentConfig::SweepAxis::SampleSizes: return "sample_sizes";
        case ExperimentConfig::SweepAxis::FractionalOrders: return "fractional_orders";
        case ExperimentConfig::SweepAxis::Sigmas: return "sigmas";
    }
    return "?";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_node(const ConfigNode& node, const std::string& raw) {
    node.check_known(
        {"generator", "n", "d", "communities", "seed", "trials", "noise_std", "gamma",
         "sweep_axis", "sample_size", "out_dir"},
        {"sample_sizes", "fractional_orders", "sigmas", "methods", "mkl_kernels"},
        {"graph", "signal", "mkl"}, "experiment");

    ExperimentConfig cfg;
    cfg.raw_text = raw;
    cfg.generator = SyntheticGraphSpec::from_string(node.require_string("generator"));
    if (node.has_scalar("n")) cfg.generator.n = node.get_int("n", cfg.generator.n);
    if (node.has_scalar("d")) cfg.generator.dim = node.get_int("d", cfg.generator.dim);
    if (node.has_scalar("communities")) {
        cfg.generator.communities = node.get_int("communities", cfg.generator.communities);
    }
    cfg.seed = node.get_uint64("seed", 0);
    cfg.trials = node.get_int("trials", 1);
    cfg.noise_std = node.get_double("noise_std", 0.0);
    cfg.gamma = node.get_double("gamma", 0.01);
    cfg.out_dir = node.get_string("out_dir", "out");
    cfg.sample_size = node.get_int("sample_size", 0);

    const std::string axis = node.get_string("sweep_axis", "sample_sizes");
    if (axis == "sample_sizes") cfg.axis = SweepAxis::SampleSizes;
    else if (axis == "fractional_orders") cfg.axis = SweepAxis::FractionalOrders;
    else if (axis == "sigmas") cfg.axis = SweepAxis::Sigmas;
    else throw_error(ErrorCode::ConfigInvalid, "unknown sweep_axis '" + axis + "'");
    cfg.sweep = node.get_double_list(axis_name(cfg.axis));

    for (const auto& text : node.get_list("methods")) {
        try {
            cfg.methods.push_back(MethodSpec::parse(text));
        } catch (const Error& e) {
            throw_error(ErrorCode::ConfigInvalid, std::string("method '") + text + "': " +
                                                      e.what());
        }
    }
    for (const auto& text : node.get_list("mkl_kernels")) {
        try {
            cfg.mkl_kernels.push_back(MethodSpec::parse(text));
        } catch (const Error& e) {
            throw_error(ErrorCode::ConfigInvalid, std::string("mkl kernel '") + text + "': " +
                                                      e.what());
        }
    }

    if (const ConfigNode* g = node.block("graph")) {
        g->check_known({"kernel", "knn", "normalized"}, {}, {}, "graph");
        try {
            cfg.graph_kernel = parse_kernel_spec(g->get_string("kernel", "egk:sigma=0.5"));
        } catch (const Error& e) {
            throw_error(ErrorCode::ConfigInvalid, std::string("graph kernel: ") + e.what());
        }
        cfg.knn = g->get_int("knn", 10);
        cfg.normalized = g->get_bool("normalized", false);
    } else {
        cfg.graph_kernel = KernelSpec::egk(0.5);
    }

    cfg.signal_band = std::max(3, cfg.generator.n / 5);
    if (const ConfigNode* s = node.block("signal")) {
        s->check_known({"type", "band", "a", "kernel", "alpha_seed", "component"}, {}, {},
                       "signal");
        const std::string type = s->get_string("type", "bandlimited");
        if (type == "bandlimited") cfg.signal_type = SignalType::Bandlimited;
        else if (type == "kernel") cfg.signal_type = SignalType::Kernel;
        else if (type == "component") cfg.signal_type = SignalType::Component;
        else throw_error(ErrorCode::ConfigInvalid, "unknown signal type '" + type + "'");
        cfg.signal_band = s->get_int("band", cfg.signal_band);
        cfg.signal_a = s->get_double("a", 1.0);
        if (s->has_scalar("kernel")) {
            try {
                cfg.signal_kernel = parse_kernel_spec(s->require_string("kernel"));
            } catch (const Error& e) {
                throw_error(ErrorCode::ConfigInvalid, std::string("signal kernel: ") + e.what());
            }
        } else {
            cfg.signal_kernel = cfg.graph_kernel;
        }
        cfg.alpha_seed = s->get_uint64("alpha_seed", 1);
        cfg.signal_component = s->get_int("component", 0);
    } else {
        cfg.signal_kernel = cfg.graph_kernel;
    }

    if (const ConfigNode* m = node.block("mkl")) {
        m->check_known({"gamma", "nu", "eta", "eps", "radius", "max_iters"}, {}, {}, "mkl");
        cfg.mkl.gamma = m->get_double("gamma", cfg.mkl.gamma);
        cfg.mkl.nu = m->get_double("nu", cfg.mkl.nu);
        cfg.mkl.eta = m->get_double("eta", cfg.mkl.eta);
        cfg.mkl.eps = m->get_double("eps", cfg.mkl.eps);
        cfg.mkl.radius = m->get_double("radius", cfg.mkl.radius);
        cfg.mkl.max_iters = m->get_int("max_iters", cfg.mkl.max_iters);
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_error(ErrorCode::IoError, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string raw = buffer.str();
    return from_node(parse_config_text(raw, path), raw);
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    return from_node(parse_config_text(text), text);
}

void ExperimentConfig::validate() const {
    const int n = generator.n;
    if (n < 2) throw_error(ErrorCode::ConfigInvalid, "experiment needs n >= 2");
    if (trials < 1) throw_error(ErrorCode::ConfigInvalid, "trials must be >= 1");
    if (noise_std < 0.0) throw_error(ErrorCode::ConfigInvalid, "noise_std must be >= 0");
    if (gamma < 0.0) throw_error(ErrorCode::ConfigInvalid, "gamma must be >= 0");
    if (sweep.empty()) {
        throw_error(ErrorCode::ConfigInvalid,
                    std::string("sweep list '") + axis_name(axis) + "' is missing or empty");
    }
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        if (!(sweep[i] > sweep[i - 1])) {
            throw_error(ErrorCode::ConfigInvalid, "sweep values must be strictly increasing");
        }
    }
    if (axis == SweepAxis::SampleSizes) {
        for (double v : sweep) {
            const int m = static_cast<int>(v);
            if (static_cast<double>(m) != v || m < 1 || m > n) {
                throw_error(ErrorCode::ConfigInvalid,
                            "sample sizes must be integers in [1, n]");
            }
        }
    } else {
        if (sample_size < 1 || sample_size > n) {
            throw_error(ErrorCode::ConfigInvalid,
                        "sample_size must be set in [1, n] for this sweep axis");
        }
        if (axis == SweepAxis::Sigmas) {
            for (double v : sweep) {
                if (!(v > 0.0)) throw_error(ErrorCode::ConfigInvalid, "sigmas must be > 0");
            }
        } else {
            for (double v : sweep) {
                if (v < 0.0) {
                    throw_error(ErrorCode::ConfigInvalid, "fractional orders must be >= 0");
                }
            }
        }
    }
    if (methods.empty()) throw_error(ErrorCode::ConfigInvalid, "methods list is empty");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            if (methods[i].label == methods[j].label) {
                throw_error(ErrorCode::ConfigInvalid,
                            "duplicate method '" + methods[i].label + "'");
            }
        }
    }
    bool has_mkl = false;
    for (const auto& m : methods) {
        if (m.route == MethodSpec::Route::Mkl) has_mkl = true;
        if (m.map_is_bandlimited && m.band_count > n) {
            throw_error(ErrorCode::ConfigInvalid, "band count exceeds n");
        }
    }
    for (const auto& m : mkl_kernels) {
        if (m.route == MethodSpec::Route::Mkl) {
            throw_error(ErrorCode::ConfigInvalid, "mkl dictionary cannot contain mkl");
        }
    }
    if (has_mkl && mkl_kernels.empty()) {
        bool any = false;
        for (const auto& m : methods) {
            if (m.route != MethodSpec::Route::Mkl) any = true;
        }
        if (!any) {
            throw_error(ErrorCode::ConfigInvalid,
                        "mkl needs a dictionary: set mkl_kernels or add kernel methods");
        }
    }
    if (signal_type == SignalType::Bandlimited) {
        if (signal_band < 3 || signal_band > n) {
            throw_error(ErrorCode::ConfigInvalid, "signal band must be in [3, n]");
        }
        if (signal_a < 0.0) throw_error(ErrorCode::ConfigInvalid, "signal a must be >= 0");
    }
    if (knn < 0) throw_error(ErrorCode::ConfigInvalid, "knn must be >= 0");
    mkl.validate(mkl_kernels.empty() ? static_cast<int>(methods.size()) :
                 static_cast<int>(mkl_kernels.size()));
}

const ResultCell* ResultTable::find(double sweep_value, const std::string& method) const {
    for (const auto& cell : cells) {
        if (cell.sweep_value == sweep_value && cell.method == method) return &cell;
    }
    return nullptr;
}

namespace {

struct ResolvedMethod {
    MethodSpec spec;
    double gamma = 0.0;
    const KernelMatrix* kernel = nullptr;   // TraditionalKrr / GraphKrr
    const GraphSpectrum* spect = nullptr;   // BandRidge
    IndexSet band;                          // BandRidge
    KernelDictionary dict;                  // Mkl
};

class Resolver {
  public:
    Resolver(const ExperimentConfig& cfg, const FeatureSet& features, const Graph& graph)
        : cfg_(cfg), features_(features), graph_(graph) {}

    const GraphSpectrum& spect(double a) {
        auto it = spectra_.find(a);
        if (it == spectra_.end()) {
            it = spectra_.emplace(a, spectrum(graph_, a, cfg_.normalized)).first;
        }
        return it->second;
    }

    const KernelMatrix& matrix_for(const MethodSpec& m) {
        std::string key;
        switch (m.route) {
            case MethodSpec::Route::TraditionalKrr:
                key = m.kernel.label;
                break;
            case MethodSpec::Route::GraphKrr:
            case MethodSpec::Route::BandRidge:
                key = m.label + "@a=" + format_double(m.a);
                break;
            case MethodSpec::Route::Mkl:
                throw_error(ErrorCode::InvalidSpec, "mkl has no single kernel matrix");
        }
        auto it = kernels_.find(key);
        if (it != kernels_.end()) return it->second;

        KernelMatrix km;
        if (m.route == MethodSpec::Route::TraditionalKrr) {
            km = kernel_matrix(m.kernel, features_);
            // Hermitian-metric and polynomial Grams can be indefinite; perturb
            // to K + eps*I so every sampled block stays invertible.
            const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(km.k,
                                                                  Eigen::EigenvaluesOnly);
            const double lo = es.eigenvalues().minCoeff();
            if (lo < 0.0) km.k.diagonal().array() += -lo;
        } else {
            const GraphSpectrum& s = spect(m.a);
            km = glk(s, method_map(m, s.size()));
        }
        return kernels_.emplace(std::move(key), std::move(km)).first->second;
    }

  private:
    const ExperimentConfig& cfg_;
    const FeatureSet& features_;
    const Graph& graph_;
    std::map<double, GraphSpectrum> spectra_;
    std::map<std::string, KernelMatrix> kernels_;
};

MethodSpec with_sweep(const ExperimentConfig& cfg, MethodSpec m, double value) {
    if (cfg.axis == ExperimentConfig::SweepAxis::Sigmas &&
        m.route == MethodSpec::Route::TraditionalKrr) {
        switch (m.kernel.family) {
            case KernelSpec::Family::Egk: m.kernel = KernelSpec::egk(value); break;
            case KernelSpec::Family::Hgk:
                m.kernel = KernelSpec::hgk(value, m.kernel.metric);
                break;
            case KernelSpec::Family::Elk: m.kernel = KernelSpec::elk(value); break;
            case KernelSpec::Family::Hlk:
                m.kernel = KernelSpec::hlk(value, m.kernel.metric);
                break;
            default: break;  // pk and precomputed have no width
        }
    }
    if (cfg.axis == ExperimentConfig::SweepAxis::FractionalOrders && m.needs_spectrum()) {
        m.a = value;
    }
    return m;
}

double mean_of(const std::vector<double>& xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    SyntheticGraphSpec gen = cfg.generator;
    gen.seed = derive_seed(cfg.seed, {0x67656eULL});
    const FeatureSet features = gen_features(gen);
    const Graph graph = gen_graph(gen, cfg.graph_kernel, SparsifyRule{cfg.knn});
    const int n = graph.size();

    Resolver resolver(cfg, features, graph);

    ComplexVector f;
    switch (cfg.signal_type) {
        case ExperimentConfig::SignalType::Bandlimited:
            f = gen_bandlimited_signal(resolver.spect(cfg.signal_a), top_band(cfg.signal_band));
            break;
        case ExperimentConfig::SignalType::Kernel:
            f = gen_signal_from_kernel(kernel_matrix(cfg.signal_kernel, features),
                                       derive_seed(cfg.seed, {cfg.alpha_seed}));
            break;
        case ExperimentConfig::SignalType::Component:
            f = feature_component(features, cfg.signal_component);
            break;
    }
    if (f.squaredNorm() == 0.0) {
        throw_error(ErrorCode::ZeroReference, "generated target signal is zero");
    }

    ResultTable table;
    table.sweep_values = cfg.sweep;
    for (const auto& m : cfg.methods) table.methods.push_back(m.label);

    for (std::size_t si = 0; si < cfg.sweep.size(); ++si) {
        const double value = cfg.sweep[si];
        const int m_count = cfg.axis == ExperimentConfig::SweepAxis::SampleSizes
                                ? static_cast<int>(value)
                                : cfg.sample_size;

        // Resolve methods for this sweep value. Resolution failures count
        // against every trial of the method.
        std::vector<ResolvedMethod> resolved;
        for (const auto& base : cfg.methods) {
            const MethodSpec m = with_sweep(cfg, base, value);
            ResolvedMethod r;
            r.spec = m;
            r.gamma = m.gamma >= 0.0 ? m.gamma : cfg.gamma;
            try {
                switch (m.route) {
                    case MethodSpec::Route::TraditionalKrr:
                    case MethodSpec::Route::GraphKrr:
                        r.kernel = &resolver.matrix_for(m);
                        break;
                    case MethodSpec::Route::BandRidge: {
                        if (m.band_count > n) {
                            throw_error(ErrorCode::IndexOutOfRange,
                                        "band count exceeds graph size");
                        }
                        r.spect = &resolver.spect(m.a);
                        r.band = top_band(m.band_count);
                        break;
                    }
                    case MethodSpec::Route::Mkl: {
                        const auto& entries =
                            cfg.mkl_kernels.empty() ? cfg.methods : cfg.mkl_kernels;
                        for (const auto& entry : entries) {
                            if (entry.route == MethodSpec::Route::Mkl) continue;
                            const MethodSpec em = with_sweep(cfg, entry, value);
                            KernelMatrix km = resolver.matrix_for(em);
                            // Equalize scales so the l1 weights compare fit
                            // efficiency rather than raw kernel magnitude.
                            const double tr = km.k.real().trace();
                            if (tr > 0.0) km.k *= static_cast<double>(n) / tr;
                            r.dict.kernels.push_back(std::move(km));
                        }
                        r.dict.validate();
                        break;
                    }
                }
                resolved.push_back(std::move(r));
            } catch (const Error&) {
                table.failures[m.label] += cfg.trials;
            }
        }

        std::map<std::string, std::vector<double>> errors;
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t trial_seed =
                derive_seed(cfg.seed, {static_cast<std::uint64_t>(si),
                                       static_cast<std::uint64_t>(t)});
            const SamplingPlan plan = SamplingPlan::uniform(n, m_count, cfg.noise_std,
                                                            trial_seed);
            const ComplexVector y = sample(plan, f);
            for (const auto& r : resolved) {
                try {
                    ComplexVector f_hat;
                    switch (r.spec.route) {
                        case MethodSpec::Route::TraditionalKrr:
                        case MethodSpec::Route::GraphKrr:
                            f_hat = krr(*r.kernel, plan, y, r.gamma).f_opt;
                            break;
                        case MethodSpec::Route::BandRidge:
                            f_hat = bandlimited_ridge(*r.spect, r.band, r.spec.mu, r.gamma,
                                                      plan, y);
                            break;
                        case MethodSpec::Route::Mkl:
                            f_hat = mkl_fit(r.dict, plan, y, cfg.mkl).f_opt;
                            break;
                    }
                    errors[r.spec.label].push_back(nmse(f_hat, f));
                } catch (const Error&) {
                    ++table.failures[r.spec.label];
                }
            }
        }

        for (const auto& m : cfg.methods) {
            const auto it = errors.find(m.label);
            if (it == errors.end() || it->second.empty()) continue;
            ResultCell cell;
            cell.sweep_value = value;
            cell.method = m.label;
            cell.trials = static_cast<int>(it->second.size());
            cell.mean_nmse = mean_of(it->second);
            cell.std_nmse = sample_std(it->second, cell.mean_nmse);
            table.cells.push_back(std::move(cell));
        }
    }
    return table;
}

void report(const ResultTable& table, const ExperimentConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream csv(out_dir + "/results.csv");
        if (!csv) throw_error(ErrorCode::IoError, "cannot write results.csv");
        csv << "sweep_value,method,mean_nmse,std_nmse,trials\n";
        for (const auto& cell : table.cells) {
            csv << format_double(cell.sweep_value) << ',' << cell.method << ','
                << format_double(cell.mean_nmse) << ',' << format_double(cell.std_nmse) << ','
                << cell.trials << '\n';
        }
    }

    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["generator"] = cfg.generator.to_string();
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["noise_std"] = cfg.noise_std;
    j["gamma"] = cfg.gamma;
    j["sweep_axis"] = axis_name(cfg.axis);
    j["sweep_values"] = cfg.sweep;
    j["methods"] = table.methods;
    nlohmann::ordered_json failures = nlohmann::ordered_json::object();
    for (const auto& [method, count] : table.failures) failures[method] = count;
    j["failures"] = failures;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    for (const auto& method : table.methods) {
        results[method] = nlohmann::ordered_json::array();
    }
    for (const auto& cell : table.cells) {
        results[cell.method].push_back({{"sweep_value", cell.sweep_value},
                                        {"mean_nmse", cell.mean_nmse},
                                        {"std_nmse", cell.std_nmse},
                                        {"trials", cell.trials}});
    }
    j["results"] = results;
    j["config"] = cfg.raw_text;

    std::ofstream json_out(out_dir + "/results.json");
    if (!json_out) throw_error(ErrorCode::IoError, "cannot write results.json");
    json_out << j.dump(2) << '\n';
}

DistFits fit_distributions(const ComplexVector& signal) {
    const RealVector mags = signal.cwiseAbs();
    DistFits fits;
    fits.rayleigh = fit_rayleigh(mags);
    fits.weibull = fit_weibull(mags);
    return fits;
}

void dist_report(const ComplexVector& original, const ComplexVector& reconstructed,
                 const std::string& out_dir, int grid_points) {
    if (grid_points < 2) throw_error(ErrorCode::ConfigInvalid, "grid needs >= 2 points");
    const RealVector mags_o = original.cwiseAbs();
    const RealVector mags_r = reconstructed.cwiseAbs();
    const DistFits fits = fit_distributions(original);
    const auto emp_o = EmpiricalDistribution::from(mags_o);
    const auto emp_r = EmpiricalDistribution::from(mags_r);
    const auto hist_o = emp_o.histogram();
    const auto hist_r = emp_r.histogram();

    const double xmax = 1.05 * std::max(mags_o.maxCoeff(), mags_r.maxCoeff());
    std::filesystem::create_directories(out_dir);

    std::ofstream cdf(out_dir + "/dist_cdf.csv");
    std::ofstream pdf(out_dir + "/dist_pdf.csv");
    if (!cdf || !pdf) throw_error(ErrorCode::IoError, "cannot write distribution report");
    cdf << "x,ecdf_original,ecdf_reconstructed,rayleigh_cdf,weibull_cdf\n";
    pdf << "x,hist_original,hist_reconstructed,rayleigh_pdf,weibull_pdf\n";
    for (int k = 0; k < grid_points; ++k) {
        const double x = xmax * static_cast<double>(k) / static_cast<double>(grid_points - 1);
        cdf << format_double(x) << ',' << format_double(emp_o.ecdf(x)) << ','
            << format_double(emp_r.ecdf(x)) << ',' << format_double(rayleigh_cdf(fits.rayleigh, x))
            << ',' << format_double(weibull_cdf(fits.weibull, x)) << '\n';
        pdf << format_double(x) << ',' << format_double(hist_o.value(x)) << ','
            << format_double(hist_r.value(x)) << ',' << format_double(rayleigh_pdf(fits.rayleigh, x))
            << ',' << format_double(weibull_pdf(fits.weibull, x)) << '\n';
    }
}

}  // namespace cgsp
