#include "cgsp/datagen.hpp"

#include <cmath>
#include <numbers>

#include "cgsp/rng.hpp"

namespace cgsp {

namespace {

using std::numbers::pi;

double parse_num(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw_error(ErrorCode::InvalidSpec, "bad " + what + " '" + text + "'");
    }
}

const char* kind_name(SyntheticGraphSpec::Kind k) {
    switch (k) {
        case SyntheticGraphSpec::Kind::TwoMoons: return "two_moons";
        case SyntheticGraphSpec::Kind::SwissRoll: return "swiss_roll";
        case SyntheticGraphSpec::Kind::Community: return "community";
        case SyntheticGraphSpec::Kind::Chirp3d: return "chirp3d";
        case SyntheticGraphSpec::Kind::Line1d: return "line1d";
    }
    return "?";
}

}  // namespace

SyntheticGraphSpec SyntheticGraphSpec::from_string(const std::string& text) {
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
    if (parts.empty() || parts[0].empty()) throw_error(ErrorCode::InvalidSpec, "empty generator");

    SyntheticGraphSpec spec;
    const std::string& name = parts[0];
    if (name == "two_moons") spec.kind = Kind::TwoMoons;
    else if (name == "swiss_roll") spec.kind = Kind::SwissRoll;
    else if (name == "community") spec.kind = Kind::Community;
    else if (name == "chirp3d") spec.kind = Kind::Chirp3d;
    else if (name == "line1d") spec.kind = Kind::Line1d;
    else throw_error(ErrorCode::InvalidSpec, "unknown generator '" + name + "'");

    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos) {
            throw_error(ErrorCode::InvalidSpec, "bad generator segment '" + parts[i] + "'");
        }
        const std::string key = parts[i].substr(0, eq);
        const std::string value = parts[i].substr(eq + 1);
        if (key == "n") spec.n = static_cast<int>(parse_num(value, "n"));
        else if (key == "d") spec.dim = static_cast<int>(parse_num(value, "d"));
        else if (key == "c") spec.communities = static_cast<int>(parse_num(value, "c"));
        else if (key == "seed") spec.seed = static_cast<std::uint64_t>(parse_num(value, "seed"));
        else if (key == "noise") spec.moon_noise = parse_num(value, "noise");
        else if (key == "p_in") spec.p_in = parse_num(value, "p_in");
        else if (key == "p_out") spec.p_out = parse_num(value, "p_out");
        else throw_error(ErrorCode::InvalidSpec, "unknown generator key '" + key + "'");
    }
    return spec;
}

std::string SyntheticGraphSpec::to_string() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s:n=%d", kind_name(kind), n);
    std::string out = buf;
    if (kind == Kind::Line1d) out += ":d=" + std::to_string(dim);
    if (kind == Kind::Community) out += ":c=" + std::to_string(communities);
    return out;
}

FeatureSet gen_features(const SyntheticGraphSpec& spec) {
    if (spec.n < 2) throw_error(ErrorCode::InvalidSpec, "generators need n >= 2");
    FeatureSet features(static_cast<std::size_t>(spec.n));
    Rng rng(derive_seed(spec.seed, {0x666561ULL}));

    switch (spec.kind) {
        case SyntheticGraphSpec::Kind::Line1d: {
            if (spec.dim < 1) throw_error(ErrorCode::InvalidSpec, "line1d needs d >= 1");
            for (int n = 0; n < spec.n; ++n) {
                const double x = -1.0 + 2.0 * static_cast<double>(n) /
                                            static_cast<double>(spec.n - 1);
                FeatureVector z(spec.dim);
                for (int i = 1; i <= spec.dim; ++i) {
                    const double phase =
                        2.0 * pi * (static_cast<double>(i) / static_cast<double>(spec.dim)) * x;
                    z(i - 1) = Complex(x, std::cos(phase));
                }
                features[static_cast<std::size_t>(n)] = z;
            }
            break;
        }
        case SyntheticGraphSpec::Kind::Chirp3d: {
            for (int t = 0; t < spec.n; ++t) {
                const double phase = 2.0 * pi * spec.chirp_rate *
                                     static_cast<double>(t) * static_cast<double>(t) /
                                     static_cast<double>(spec.n);
                FeatureVector z(3);
                z(0) = std::polar(1.0, phase);
                z(1) = std::polar(1.0, phase + pi / 3.0);
                z(2) = std::polar(1.0, phase + 2.0 * pi / 3.0);
                features[static_cast<std::size_t>(t)] = z;
            }
            break;
        }
        case SyntheticGraphSpec::Kind::TwoMoons: {
            const int n1 = (spec.n + 1) / 2;
            for (int i = 0; i < spec.n; ++i) {
                const bool first = i < n1;
                const int count = first ? n1 : spec.n - n1;
                const int j = first ? i : i - n1;
                const double t = count > 1
                                     ? pi * static_cast<double>(j) / static_cast<double>(count - 1)
                                     : 0.0;
                double x = first ? std::cos(t) : 1.0 - std::cos(t);
                double y = first ? std::sin(t) : spec.moon_offset - std::sin(t);
                x += spec.moon_noise * rng.normal();
                y += spec.moon_noise * rng.normal();
                FeatureVector z(1);
                z(0) = Complex(x, y);
                features[static_cast<std::size_t>(i)] = z;
            }
            break;
        }
        case SyntheticGraphSpec::Kind::SwissRoll: {
            for (int i = 0; i < spec.n; ++i) {
                const double t = 1.5 * pi * (1.0 + 2.0 * rng.uniform());
                const double h = spec.roll_height * rng.uniform();
                FeatureVector z(3);
                z(0) = Complex(t * std::cos(t), 0.0);
                z(1) = Complex(h, 0.0);
                z(2) = Complex(t * std::sin(t), 0.0);
                features[static_cast<std::size_t>(i)] = z;
            }
            if (spec.roll_normalize) {
                double scale = 0.0;
                for (const auto& z : features) {
                    scale = std::max(scale, z.cwiseAbs().maxCoeff());
                }
                if (scale > 0.0) {
                    for (auto& z : features) z /= scale;
                }
            }
            break;
        }
        case SyntheticGraphSpec::Kind::Community: {
            if (spec.communities < 1 || spec.communities > spec.n) {
                throw_error(ErrorCode::InvalidSpec, "community count must be in [1, n]");
            }
            const int per = (spec.n + spec.communities - 1) / spec.communities;
            for (int i = 0; i < spec.n; ++i) {
                const int c = i / per;
                const double angle =
                    2.0 * pi * static_cast<double>(c) / static_cast<double>(spec.communities);
                FeatureVector z(1);
                z(0) = std::polar(1.0, angle) +
                       spec.community_std * Complex(rng.normal(), rng.normal());
                features[static_cast<std::size_t>(i)] = z;
            }
            break;
        }
    }
    return features;
}

Graph gen_graph(const SyntheticGraphSpec& spec, const KernelSpec& kernel,
                const SparsifyRule& rule) {
    if (spec.kind == SyntheticGraphSpec::Kind::Community) {
        return community_graph(spec.n, spec.communities, spec.p_in, spec.p_out, spec.seed);
    }
    return graph_from_kernel(kernel, gen_features(spec), rule);
}

ComplexVector gen_bandlimited_signal(const GraphSpectrum& s, const IndexSet& band) {
    if (static_cast<int>(band.size()) < 3) {
        throw_error(ErrorCode::BandTooSmall, "bandlimited signal needs |band| >= 3");
    }
    const int n = s.size();
    if (n < 3) throw_error(ErrorCode::DimensionMismatch, "spectrum too small");
    ComplexVector c = 10.0 * s.eig.vectors.col(0) + 5.0 * s.eig.vectors.col(1) +
                      20.0 * s.eig.vectors.col(2);
    return bandlimit_project(s, band, c);
}

ComplexVector gen_signal_from_kernel(const KernelMatrix& k, const ComplexVector& alpha) {
    if (alpha.size() != k.k.rows()) {
        throw_error(ErrorCode::DimensionMismatch, "coefficient length does not match kernel");
    }
    return k.k * alpha;
}

ComplexVector gen_signal_from_kernel(const KernelMatrix& k, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {0x616c70ULL}));
    ComplexVector alpha(k.k.rows());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha(i) = rng.complex_normal();
    return gen_signal_from_kernel(k, alpha);
}

ComplexVector feature_component(const FeatureSet& features, int component) {
    if (features.empty()) throw_error(ErrorCode::DimensionMismatch, "empty feature set");
    if (component < 0 || component >= features.front().size()) {
        throw_error(ErrorCode::IndexOutOfRange, "feature component out of range");
    }
    ComplexVector f(static_cast<Eigen::Index>(features.size()));
    for (std::size_t i = 0; i < features.size(); ++i) {
        f(static_cast<Eigen::Index>(i)) = features[i](component);
    }
    return f;
}

}  // namespace cgsp
