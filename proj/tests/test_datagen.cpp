#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cgsp/datagen.hpp"
#include "cgsp/kernels.hpp"
#include "cgsp/spectral.hpp"
#include "test_support.hpp"

using namespace cgsp;
using std::numbers::pi;

namespace {

SyntheticGraphSpec line_spec(int n, int d, std::uint64_t seed = 0) {
    SyntheticGraphSpec spec;
    spec.kind = SyntheticGraphSpec::Kind::Line1d;
    spec.n = n;
    spec.dim = d;
    spec.seed = seed;
    return spec;
}

Graph path4() {
    RealMatrix w = RealMatrix::Zero(4, 4);
    for (int i = 0; i < 3; ++i) {
        w(i, i + 1) = 1.0;
        w(i + 1, i) = 1.0;
    }
    return Graph::from_adjacency(w);
}

}  // namespace

TEST_CASE("generator spec parses name and keys") {
    const auto roll = SyntheticGraphSpec::from_string("swiss_roll:n=200:seed=7");
    CHECK(roll.kind == SyntheticGraphSpec::Kind::SwissRoll);
    CHECK(roll.n == 200);
    CHECK(roll.seed == 7);

    const auto line = SyntheticGraphSpec::from_string("line1d:n=1000:d=2");
    CHECK(line.kind == SyntheticGraphSpec::Kind::Line1d);
    CHECK(line.n == 1000);
    CHECK(line.dim == 2);

    const auto comm =
        SyntheticGraphSpec::from_string("community:n=16:c=4:p_in=0.9:p_out=0.05:seed=3");
    CHECK(comm.kind == SyntheticGraphSpec::Kind::Community);
    CHECK(comm.n == 16);
    CHECK(comm.communities == 4);
    CHECK(comm.p_in == 0.9);
    CHECK(comm.p_out == 0.05);
    CHECK(comm.seed == 3);

    const auto moons = SyntheticGraphSpec::from_string("two_moons:n=50:noise=0.1");
    CHECK(moons.kind == SyntheticGraphSpec::Kind::TwoMoons);
    CHECK(moons.moon_noise == 0.1);

    const auto chirp = SyntheticGraphSpec::from_string("chirp3d:n=64");
    CHECK(chirp.kind == SyntheticGraphSpec::Kind::Chirp3d);
    CHECK(chirp.n == 64);
}

TEST_CASE("generator spec to_string carries the shape keys") {
    CHECK(line_spec(3, 2).to_string() == "line1d:n=3:d=2");

    SyntheticGraphSpec comm;
    comm.kind = SyntheticGraphSpec::Kind::Community;
    comm.n = 16;
    comm.communities = 4;
    CHECK(comm.to_string() == "community:n=16:c=4");

    SyntheticGraphSpec roll;
    roll.n = 200;
    CHECK(roll.to_string() == "swiss_roll:n=200");

    const auto round = SyntheticGraphSpec::from_string("line1d:n=9:d=3");
    CHECK(SyntheticGraphSpec::from_string(round.to_string()).to_string() == round.to_string());
}

TEST_CASE("generator spec rejects malformed text") {
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string(""), InvalidSpec);
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string("ring:n=5"), InvalidSpec);
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string("line1d:n"), InvalidSpec);
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string("line1d:"), InvalidSpec);
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string("line1d:q=2"), InvalidSpec);
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string("line1d:n=abc"), InvalidSpec);
    CHECK_ERROR_CODE(SyntheticGraphSpec::from_string("line1d:n=3x"), InvalidSpec);
}

TEST_CASE("line grid hits -1, 0, 1 with cosine components") {
    const auto f = gen_features(line_spec(3, 2));
    REQUIRE(f.size() == 3);
    REQUIRE(f[0].size() == 2);

    CHECK(f[0](0).real() == -1.0);
    CHECK(f[1](0).real() == 0.0);
    CHECK(f[2](0).real() == 1.0);

    // component 1: x + i cos(pi x); component 2: x + i cos(2 pi x)
    CHECK(f[0](0).imag() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(f[1](0).imag() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[2](0).imag() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(f[0](1).imag() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[1](1).imag() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[2](1).imag() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f[0](1).real() == -1.0);
    CHECK(f[2](1).real() == 1.0);
}

TEST_CASE("line grid endpoints are exact for any size") {
    const auto f = gen_features(line_spec(7, 1));
    CHECK(f.front()(0).real() == -1.0);
    CHECK(f.back()(0).real() == 1.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
        CHECK(f[i](0).real() > f[i - 1](0).real());
    }
}

TEST_CASE("line generator validates shape") {
    CHECK_ERROR_CODE(gen_features(line_spec(1, 2)), InvalidSpec);
    CHECK_ERROR_CODE(gen_features(line_spec(3, 0)), InvalidSpec);
}

TEST_CASE("chirp components are unit modulus with pi/3 offsets") {
    SyntheticGraphSpec spec;
    spec.kind = SyntheticGraphSpec::Kind::Chirp3d;
    spec.n = 64;
    const auto f = gen_features(spec);
    REQUIRE(f.size() == 64);
    REQUIRE(f[0].size() == 3);

    CHECK(std::abs(f[0](0) - Complex(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(f[0](1) - std::polar(1.0, pi / 3.0)) <= 1e-15);
    CHECK(std::abs(f[0](2) - std::polar(1.0, 2.0 * pi / 3.0)) <= 1e-15);

    for (const auto& z : f) {
        for (int i = 0; i < 3; ++i) CHECK(std::abs(z(i)) == doctest::Approx(1.0).epsilon(1e-13));
    }

    const double phase1 = 2.0 * pi * 0.1 / 64.0;
    CHECK(std::arg(f[1](0)) == doctest::Approx(phase1).epsilon(1e-12));
}

TEST_CASE("moons trace interleaved semicircles when noise is off") {
    SyntheticGraphSpec spec;
    spec.kind = SyntheticGraphSpec::Kind::TwoMoons;
    spec.n = 50;
    spec.moon_noise = 0.0;
    const auto f = gen_features(spec);
    REQUIRE(f.size() == 50);
    REQUIRE(f[0].size() == 1);

    CHECK(std::abs(f[0](0) - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(f[24](0) - Complex(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(f[25](0) - Complex(0.0, 0.5)) <= 1e-12);
    CHECK(std::abs(f[49](0) - Complex(2.0, 0.5)) <= 1e-12);
}

TEST_CASE("noisy moons are reproducible from the seed") {
    SyntheticGraphSpec spec;
    spec.kind = SyntheticGraphSpec::Kind::TwoMoons;
    spec.n = 30;
    spec.seed = 5;
    const auto a = gen_features(spec);
    const auto b = gen_features(spec);
    spec.seed = 6;
    const auto c = gen_features(spec);

    double diff_ab = 0.0, diff_ac = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff_ab = std::max(diff_ab, std::abs(a[i](0) - b[i](0)));
        diff_ac = std::max(diff_ac, std::abs(a[i](0) - c[i](0)));
    }
    CHECK(diff_ab == 0.0);
    CHECK(diff_ac > 0.0);
}

TEST_CASE("roll points are real triples scaled into the unit box") {
    SyntheticGraphSpec spec;
    spec.n = 40;
    spec.seed = 11;
    const auto f = gen_features(spec);
    REQUIRE(f.size() == 40);
    REQUIRE(f[0].size() == 3);

    double max_abs = 0.0;
    for (const auto& z : f) {
        for (int i = 0; i < 3; ++i) {
            CHECK(z(i).imag() == 0.0);
            max_abs = std::max(max_abs, std::abs(z(i)));
        }
    }
    CHECK(max_abs <= 1.0 + 1e-14);
    CHECK(max_abs > 0.99);

    spec.roll_normalize = false;
    const auto raw = gen_features(spec);
    double raw_max = 0.0;
    for (const auto& z : raw) {
        for (int i = 0; i < 3; ++i) raw_max = std::max(raw_max, std::abs(z(i)));
    }
    CHECK(raw_max > 1.0);
}

TEST_CASE("community features sit on unit-circle centers when scatter is off") {
    SyntheticGraphSpec spec;
    spec.kind = SyntheticGraphSpec::Kind::Community;
    spec.n = 8;
    spec.communities = 2;
    spec.community_std = 0.0;
    const auto f = gen_features(spec);
    REQUIRE(f.size() == 8);

    for (int i = 0; i < 4; ++i) CHECK(std::abs(f[static_cast<std::size_t>(i)](0) - Complex(1.0, 0.0)) <= 1e-12);
    for (int i = 4; i < 8; ++i) CHECK(std::abs(f[static_cast<std::size_t>(i)](0) - Complex(-1.0, 0.0)) <= 1e-12);

    spec.communities = 0;
    CHECK_ERROR_CODE(gen_features(spec), InvalidSpec);
    spec.communities = 9;
    CHECK_ERROR_CODE(gen_features(spec), InvalidSpec);
}

TEST_CASE("experiment graph dispatches by generator kind") {
    const auto kernel = KernelSpec::egk(1.0);

    SyntheticGraphSpec comm;
    comm.kind = SyntheticGraphSpec::Kind::Community;
    comm.n = 12;
    comm.communities = 3;
    comm.p_in = 0.8;
    comm.p_out = 0.05;
    comm.seed = 21;
    const Graph g = gen_graph(comm, kernel);
    const Graph direct = community_graph(12, 3, 0.8, 0.05, 21);
    CHECK((g.w - direct.w).cwiseAbs().maxCoeff() == 0.0);

    const auto line = line_spec(6, 1, 4);
    const Graph gl = gen_graph(line, kernel);
    const Graph via_kernel = graph_from_kernel(kernel, gen_features(line), SparsifyRule{});
    CHECK((gl.w - via_kernel.w).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bandlimited signal is the fixed combination of leading columns") {
    const Graph g = path4();
    const GraphSpectrum s = spectrum(g, 1.0, false);
    const IndexSet band{0, 1, 2};

    const ComplexVector f = gen_bandlimited_signal(s, band);
    const ComplexVector c = 10.0 * s.eig.vectors.col(0) + 5.0 * s.eig.vectors.col(1) +
                            20.0 * s.eig.vectors.col(2);
    CHECK((f - c).norm() <= 1e-12 * c.norm());

    const ComplexVector again = bandlimit_project(s, band, f);
    CHECK((again - f).norm() <= 1e-12 * f.norm());

    const ComplexVector coeffs = gfrft(s, f);
    CHECK(std::abs(coeffs(3)) <= 1e-10);

    const ComplexVector head = bandlimit_project(s, IndexSet{0}, c);
    CHECK((head - 10.0 * s.eig.vectors.col(0)).norm() <= 1e-10);
}

TEST_CASE("bandlimited signal stays fixed under fractional projection") {
    const Graph g = path4();
    const GraphSpectrum s = spectrum(g, 0.9, false);
    const IndexSet band{0, 1, 2};
    const ComplexVector f = gen_bandlimited_signal(s, band);
    CHECK((bandlimit_project(s, band, f) - f).norm() <= 1e-10 * f.norm());
}

TEST_CASE("bandlimited signal validates band and spectrum size") {
    const Graph g = path4();
    const GraphSpectrum s = spectrum(g, 1.0, false);
    CHECK_ERROR_CODE(gen_bandlimited_signal(s, IndexSet{0, 1}), BandTooSmall);

    RealMatrix w2 = RealMatrix::Zero(2, 2);
    w2(0, 1) = 1.0;
    w2(1, 0) = 1.0;
    const GraphSpectrum s2 = spectrum(Graph::from_adjacency(w2), 1.0, false);
    CHECK_ERROR_CODE(gen_bandlimited_signal(s2, IndexSet{0, 1, 2}), DimensionMismatch);
}

TEST_CASE("kernel signal with a unit coefficient extracts a column") {
    cgsp::Rng rng(321);
    const auto features = testutil::random_features(rng, 5, 2);
    const KernelMatrix k = kernel_matrix(KernelSpec::egk(1.0), features);

    ComplexVector alpha = ComplexVector::Zero(5);
    alpha(0) = 1.0;
    const ComplexVector f = gen_signal_from_kernel(k, alpha);
    CHECK((f - k.k.col(0)).norm() == 0.0);

    const ComplexVector zero = gen_signal_from_kernel(k, ComplexVector::Zero(5));
    CHECK(zero.norm() == 0.0);

    CHECK_ERROR_CODE(gen_signal_from_kernel(k, ComplexVector::Zero(4)), DimensionMismatch);
}

TEST_CASE("seeded kernel signal is reproducible") {
    cgsp::Rng rng(654);
    const auto features = testutil::random_features(rng, 6, 2);
    const KernelMatrix k =
        kernel_matrix(KernelSpec::hgk(0.8, MetricTensor(MetricTensor::Kind::Kahler)), features);

    const ComplexVector a = gen_signal_from_kernel(k, 17);
    const ComplexVector b = gen_signal_from_kernel(k, 17);
    const ComplexVector c = gen_signal_from_kernel(k, 18);
    CHECK((a - b).norm() == 0.0);
    CHECK((a - c).norm() > 0.0);
}

TEST_CASE("feature component extraction matches the grid") {
    const auto f = gen_features(line_spec(3, 2));
    const ComplexVector comp = feature_component(f, 1);
    REQUIRE(comp.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(comp(i) == f[static_cast<std::size_t>(i)](1));

    CHECK_ERROR_CODE(feature_component(f, 2), IndexOutOfRange);
    CHECK_ERROR_CODE(feature_component(f, -1), IndexOutOfRange);
    CHECK_ERROR_CODE(feature_component(FeatureSet{}, 0), DimensionMismatch);
}

TEST_CASE("rayleigh fit matches the closed-form scale") {
    RealVector x(10);
    for (int i = 0; i < 10; ++i) x(i) = (i % 2 == 0) ? 3.0 : 4.0;
    const RayleighFit fit = fit_rayleigh(x);
    CHECK(fit.sigma == 2.5);
    CHECK(fit.n == 10);
}

TEST_CASE("rayleigh fit recovers the sampling scale") {
    const RealVector x = sample_rayleigh(2.0, 100000, 99);
    const RayleighFit fit = fit_rayleigh(x);
    CHECK(fit.sigma >= 1.98);
    CHECK(fit.sigma <= 2.02);
}

TEST_CASE("rayleigh fit validates its input") {
    CHECK_ERROR_CODE(fit_rayleigh(RealVector::Ones(9)), InsufficientData);
    CHECK_ERROR_CODE(fit_rayleigh(RealVector::Zero(10)), FitDiverged);

    RealVector bad = RealVector::Ones(10);
    bad(3) = -1.0;
    CHECK_ERROR_CODE(fit_rayleigh(bad), OutOfDomain);
    bad(3) = std::nan("");
    CHECK_ERROR_CODE(fit_rayleigh(bad), OutOfDomain);
}

TEST_CASE("weibull fit recovers shape and scale") {
    const RealVector x = sample_weibull(1.5, 2.0, 50000, 11);
    const WeibullFit fit = fit_weibull(x);
    CHECK(fit.shape == doctest::Approx(1.5).epsilon(0.02));
    CHECK(fit.scale == doctest::Approx(2.0).epsilon(0.02));
    CHECK(fit.n == 50000);
    CHECK(fit.iterations >= 1);
}

TEST_CASE("weibull fit sees rayleigh data as shape two") {
    const RealVector x = sample_rayleigh(1.5, 50000, 7);
    const WeibullFit fit = fit_weibull(x);
    CHECK(fit.shape == doctest::Approx(2.0).epsilon(0.03));
    CHECK(fit.scale == doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(0.03));
}

TEST_CASE("weibull fit validates its input") {
    CHECK_ERROR_CODE(fit_weibull(RealVector::Ones(3)), InsufficientData);

    RealVector with_zero = RealVector::Ones(12);
    with_zero(5) = 0.0;
    CHECK_ERROR_CODE(fit_weibull(with_zero), OutOfDomain);

    CHECK_ERROR_CODE(fit_weibull(RealVector::Constant(12, 5.0)), FitDiverged);
}

TEST_CASE("fitted densities evaluate at reference points") {
    RayleighFit r;
    r.sigma = 1.0;
    const double median = std::sqrt(2.0 * std::log(2.0));
    CHECK(rayleigh_cdf(r, median) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rayleigh_cdf(r, 0.0) == 0.0);
    CHECK(rayleigh_cdf(r, -1.0) == 0.0);
    CHECK(rayleigh_pdf(r, -1.0) == 0.0);
    CHECK(rayleigh_pdf(r, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    WeibullFit w;
    w.shape = 1.0;
    w.scale = 1.0;
    CHECK(weibull_cdf(w, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(weibull_cdf(w, 0.0) == 0.0);
    CHECK(weibull_pdf(w, 0.0) == 1.0);
    CHECK(weibull_pdf(w, -1.0) == 0.0);

    w.shape = 2.0;
    CHECK(weibull_pdf(w, 0.0) == 0.0);
}

TEST_CASE("samplers are seeded and validate parameters") {
    const RealVector a = sample_rayleigh(1.0, 64, 9);
    const RealVector b = sample_rayleigh(1.0, 64, 9);
    CHECK((a - b).norm() == 0.0);
    CHECK(a.minCoeff() >= 0.0);

    const RealVector c = sample_weibull(2.0, 1.0, 64, 9);
    const RealVector d = sample_weibull(2.0, 1.0, 64, 9);
    CHECK((c - d).norm() == 0.0);
    CHECK(c.minCoeff() >= 0.0);
    CHECK((a - c).norm() > 0.0);

    CHECK_ERROR_CODE(sample_rayleigh(0.0, 10, 1), OutOfDomain);
    CHECK_ERROR_CODE(sample_rayleigh(1.0, 0, 1), InsufficientData);
    CHECK_ERROR_CODE(sample_weibull(0.0, 1.0, 10, 1), OutOfDomain);
    CHECK_ERROR_CODE(sample_weibull(1.0, -1.0, 10, 1), OutOfDomain);
    CHECK_ERROR_CODE(sample_weibull(1.0, 1.0, 0, 1), InsufficientData);
}

TEST_CASE("empirical cdf counts samples at or below the query") {
    RealVector v(3);
    v << 3.0, 1.0, 2.0;
    const auto d = EmpiricalDistribution::from(v);
    CHECK(d.sorted(0) == 1.0);
    CHECK(d.sorted(2) == 3.0);

    CHECK(d.ecdf(0.5) == 0.0);
    CHECK(d.ecdf(1.0) == 1.0 / 3.0);
    CHECK(d.ecdf(1.5) == 1.0 / 3.0);
    CHECK(d.ecdf(2.0) == 2.0 / 3.0);
    CHECK(d.ecdf(3.0) == 1.0);
    CHECK(d.ecdf(10.0) == 1.0);
    CHECK(d.ecdf(1.0 - 1e-12) == 0.0);

    CHECK_ERROR_CODE(EmpiricalDistribution::from(RealVector{}), EmptySignal);
}

TEST_CASE("histogram density integrates to one") {
    const RealVector x = sample_rayleigh(1.0, 5000, 3);
    const auto hist = EmpiricalDistribution::from(x).histogram();
    REQUIRE(hist.density.size() >= 2);
    CHECK(hist.density.sum() * hist.width == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hist.value(hist.lo - 1.0) == 0.0);
    CHECK(hist.value(hist.lo + 0.5 * hist.width) == hist.density(0));
}

TEST_CASE("flat samples collapse into a single histogram bin") {
    const auto hist = EmpiricalDistribution::from(RealVector::Constant(20, 5.0)).histogram();
    REQUIRE(hist.density.size() == 1);
    CHECK(hist.lo == 5.0);
    CHECK(hist.width == 1.0);
    CHECK(hist.density(0) == 1.0);
    CHECK(hist.value(5.0) == 1.0);
    CHECK(hist.value(4.9) == 0.0);
}
