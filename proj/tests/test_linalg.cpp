#include <doctest.h>

#include <cmath>
#include <complex>

#include "cgsp/linalg.hpp"
#include "cgsp/rng.hpp"
#include "test_support.hpp"

using namespace cgsp;
using testutil::max_abs;

namespace {

// Same tie-breaking rule as the library: first strict maximum wins.
bool leading_components_real_nonnegative(const ComplexMatrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < v.rows(); ++r) {
            const double m = std::abs(v(r, c));
            if (m > best) {
                best = m;
                imax = r;
            }
        }
        if (std::abs(v(imax, c).imag()) > 1e-14) return false;
        if (v(imax, c).real() < 0.0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("is_hermitian accepts hermitian and zero matrices") {
    CHECK(is_hermitian(ComplexMatrix::Zero(2, 2)));
    ComplexMatrix a(2, 2);
    a << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0);
    CHECK(is_hermitian(a));
    ComplexMatrix b(2, 2);
    b << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
    CHECK_FALSE(is_hermitian(b));
    CHECK_FALSE(is_hermitian(ComplexMatrix::Zero(2, 3)));
}

TEST_CASE("eig_hermitian matches a hand-solved 2x2 and sorts descending") {
    ComplexMatrix a(2, 2);
    a << Complex(1, 0), Complex(0, 1), Complex(0, -1), Complex(1, 0);
    const EigenDecomposition dec = eig_hermitian(a);
    CHECK(dec.eigenvalues(0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(dec.eigenvalues(1)) < 1e-13);
    const ComplexMatrix resid =
        a * dec.vectors - dec.vectors * dec.eigenvalues.cast<Complex>().asDiagonal();
    CHECK(max_abs(resid) < 1e-12);
    CHECK(max_abs(dec.vectors.adjoint() * dec.vectors - ComplexMatrix::Identity(2, 2)) < 1e-12);
    CHECK(leading_components_real_nonnegative(dec.vectors));
}

TEST_CASE("eig_hermitian diagonal oracles") {
    const EigenDecomposition id3 = eig_hermitian(ComplexMatrix::Identity(3, 3));
    for (int k = 0; k < 3; ++k) CHECK(id3.eigenvalues(k) == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix d(2, 2);
    d << Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0);
    const EigenDecomposition dec = eig_hermitian(d);
    CHECK(dec.eigenvalues(0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(dec.eigenvalues(1)) < 1e-14);
    CHECK(std::abs(dec.vectors(0, 0) - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(dec.vectors(1, 1) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("eig_hermitian is a valid decomposition on random matrices and deterministic") {
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + rng.uniform_int(8);
        const ComplexMatrix a = testutil::random_hermitian(rng, n);
        const EigenDecomposition dec = eig_hermitian(a);
        const double scale = std::max(max_abs(a), 1.0);
        CHECK(max_abs(a * dec.vectors -
                      dec.vectors * dec.eigenvalues.cast<Complex>().asDiagonal()) <
              1e-11 * scale);
        CHECK(max_abs(dec.vectors.adjoint() * dec.vectors -
                      ComplexMatrix::Identity(n, n)) < 1e-11);
        for (int k = 0; k + 1 < n; ++k) CHECK(dec.eigenvalues(k) >= dec.eigenvalues(k + 1));
        CHECK(leading_components_real_nonnegative(dec.vectors));

        const EigenDecomposition again = eig_hermitian(a);
        CHECK((dec.vectors - again.vectors).cwiseAbs().maxCoeff() == 0.0);
        CHECK((dec.eigenvalues - again.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("eig_hermitian rejects malformed input") {
    CHECK_ERROR_CODE(eig_hermitian(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
    CHECK_ERROR_CODE(eig_hermitian(ComplexMatrix()), DimensionMismatch);
    ComplexMatrix nonherm(2, 2);
    nonherm << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
    CHECK_ERROR_CODE(eig_hermitian(nonherm), NonHermitianInput);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 0) = Complex(std::nan(""), 0);
    CHECK_ERROR_CODE(eig_hermitian(bad), NonFinite);
}

TEST_CASE("fractional_unitary_power square root of the swap matrix") {
    ComplexMatrix swap(2, 2);
    swap << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
    const ComplexMatrix half = fractional_unitary_power(swap, 0.5);
    ComplexMatrix expected(2, 2);
    expected << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5), Complex(0.5, 0.5);
    CHECK(max_abs(half - expected) < 1e-12);
    CHECK(max_abs(half * half - swap) < 1e-12);
}

TEST_CASE("fractional_unitary_power keeps the eigenphase pi on the positive branch") {
    const ComplexMatrix minus_i2 = -ComplexMatrix::Identity(2, 2);
    const ComplexMatrix half = fractional_unitary_power(minus_i2, 0.5);
    CHECK(max_abs(half - Complex(0, 1) * ComplexMatrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("fractional powers of a unitary compose and invert") {
    Rng rng(7);
    const ComplexMatrix u = eig_hermitian(testutil::random_hermitian(rng, 6)).vectors;
    CHECK(max_abs(fractional_unitary_power(u, 0.0) - ComplexMatrix::Identity(6, 6)) < 1e-12);
    CHECK(max_abs(fractional_unitary_power(u, 1.0) - u) < 1e-12);
    const ComplexMatrix ua = fractional_unitary_power(u, 0.3);
    const ComplexMatrix ub = fractional_unitary_power(u, 0.7);
    CHECK(max_abs(ua * ub - u) < 1e-9);
    CHECK(max_abs(ua.adjoint() * ua - ComplexMatrix::Identity(6, 6)) < 1e-11);
}

TEST_CASE("fractional_unitary_power rejects non-unitary input") {
    ComplexMatrix stretch = ComplexMatrix::Identity(2, 2);
    stretch(0, 0) = Complex(2, 0);
    CHECK_ERROR_CODE(fractional_unitary_power(stretch, 0.5), NonUnitaryInput);
    CHECK_ERROR_CODE(fractional_unitary_power(ComplexMatrix::Zero(2, 3), 0.5),
                     DimensionMismatch);
}

TEST_CASE("pseudo_inverse inverts the positive part of the spectrum") {
    ComplexMatrix d(2, 2);
    d << Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0);
    ComplexMatrix expected(2, 2);
    expected << Complex(0.5, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0);
    CHECK(max_abs(pseudo_inverse(d) - expected) < 1e-13);
}

TEST_CASE("pseudo_inverse satisfies the Penrose identities on rank-deficient PSD input") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + rng.uniform_int(5);
        const int rank = 1 + rng.uniform_int(n);
        const ComplexMatrix k = testutil::random_psd(rng, n, rank);
        const ComplexMatrix pinv = pseudo_inverse(k);
        const double scale = std::max(max_abs(k), 1.0);
        CHECK(max_abs(k * pinv * k - k) < 1e-9 * scale);
        CHECK(max_abs(pinv * k * pinv - pinv) < 1e-9 * std::max(max_abs(pinv), 1.0));
        CHECK(is_hermitian(pinv, 1e-9));
    }
}

TEST_CASE("solve_hpd solves and rejects indefinite systems") {
    ComplexMatrix a(1, 1);
    a << Complex(2, 0);
    ComplexVector b(1);
    b << Complex(4, 0);
    const ComplexVector x = solve_hpd(a, b);
    CHECK(std::abs(x(0) - Complex(2, 0)) < 1e-14);

    ComplexMatrix indef(2, 2);
    indef << Complex(1, 0), Complex(2, 0), Complex(2, 0), Complex(1, 0);
    ComplexVector rhs = ComplexVector::Ones(2);
    CHECK_ERROR_CODE(solve_hpd(indef, rhs), NotPositiveDefinite);

    Rng rng(3);
    const int n = 6;
    ComplexMatrix hpd = testutil::random_psd(rng, n, n);
    hpd += ComplexMatrix::Identity(n, n);
    const ComplexVector y = testutil::random_vector(rng, n);
    const ComplexVector sol = solve_hpd(hpd, y);
    CHECK((hpd * sol - y).norm() < 1e-10 * y.norm());

    const ComplexMatrix rhs_m = testutil::random_matrix(rng, n, 3);
    const ComplexMatrix sol_m = solve_hpd(hpd, rhs_m);
    CHECK(max_abs(hpd * sol_m - rhs_m) < 1e-10 * max_abs(rhs_m));

    ComplexVector short_rhs = ComplexVector::Ones(2);
    CHECK_ERROR_CODE(solve_hpd(hpd, short_rhs), DimensionMismatch);
}
