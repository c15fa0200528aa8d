#include "cgsp/linalg.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace cgsp {

bool is_hermitian(const ComplexMatrix& a, double rtol) {
    if (a.rows() != a.cols()) return false;
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    const double dev = (a - a.adjoint()).cwiseAbs().maxCoeff();
    return dev <= rtol * scale;
}

namespace {

void fix_phases(ComplexMatrix& u) {
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            const double m = std::abs(u(i, k));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        if (best <= 0.0) continue;
        const Complex phase = u(imax, k) / best;
        u.col(k) *= std::conj(phase);
    }
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw_error(ErrorCode::DimensionMismatch, "eig_hermitian requires a square matrix");
    }
    if (a.rows() == 0) {
        throw_error(ErrorCode::DimensionMismatch, "eig_hermitian requires a non-empty matrix");
    }
    if (!a.allFinite()) throw_error(ErrorCode::NonFinite, "eig_hermitian input");
    if (!is_hermitian(a)) {
        throw_error(ErrorCode::NonHermitianInput, "eig_hermitian input deviates from A = A^H");
    }
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw_error(ErrorCode::ConvergenceFailure, "hermitian eigensolver did not converge");
    }

    const Eigen::Index n = a.rows();
    EigenDecomposition dec;
    dec.eigenvalues = solver.eigenvalues().reverse();
    dec.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        dec.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    fix_phases(dec.vectors);
    ensure_finite(dec.vectors, "eig_hermitian output");
    return dec;
}

ComplexMatrix fractional_unitary_power(const ComplexMatrix& u, double a) {
    if (u.rows() != u.cols()) {
        throw_error(ErrorCode::DimensionMismatch, "fractional power requires a square matrix");
    }
    if (!u.allFinite()) throw_error(ErrorCode::NonFinite, "fractional power input");
    const Eigen::Index n = u.rows();
    const double unitary_dev =
        (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (unitary_dev > 1e-8) {
        throw_error(ErrorCode::NonUnitaryInput, "matrix is not unitary within 1e-8");
    }

    Eigen::ComplexSchur<ComplexMatrix> schur(u);
    if (schur.info() != Eigen::Success) {
        throw_error(ErrorCode::ConvergenceFailure, "Schur decomposition did not converge");
    }
    // A normal matrix has diagonal Schur form; the diagonal holds the
    // eigenphases on the unit circle.
    const ComplexMatrix& q = schur.matrixU();
    ComplexVector powered(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double theta = std::arg(schur.matrixT()(k, k));
        // arg lands on -pi for eigenvalues numerically at the branch cut;
        // keep the principal interval half-open at +pi.
        if (theta + std::numbers::pi <= 1e-12) theta = std::numbers::pi;
        powered(k) = std::polar(1.0, a * theta);
    }
    ComplexMatrix out = q * powered.asDiagonal() * q.adjoint();
    ensure_finite(out, "fractional power output");
    return out;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rtol) {
    const EigenDecomposition dec = eig_hermitian(a);
    const Eigen::Index n = a.rows();
    if (rtol < 0.0) rtol = 1e-10 * static_cast<double>(n);
    const double lambda_max = dec.eigenvalues.size() > 0 ? dec.eigenvalues(0) : 0.0;
    const double cutoff = rtol * std::max(lambda_max, 0.0);
    RealVector inv(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = dec.eigenvalues(k);
        inv(k) = lam > cutoff ? 1.0 / lam : 0.0;
    }
    return dec.vectors * inv.asDiagonal() * dec.vectors.adjoint();
}

namespace {

Eigen::LLT<ComplexMatrix> checked_llt(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        throw_error(ErrorCode::DimensionMismatch, "solve_hpd requires a square matrix");
    }
    if (!a.allFinite()) throw_error(ErrorCode::NonFinite, "solve_hpd input");
    if (!is_hermitian(a, 1e-8)) {
        throw_error(ErrorCode::NonHermitianInput, "solve_hpd input deviates from A = A^H");
    }
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw_error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    }
    return llt;
}

}  // namespace

ComplexVector solve_hpd(const ComplexMatrix& a, const ComplexVector& b) {
    if (a.rows() != b.size()) {
        throw_error(ErrorCode::DimensionMismatch, "solve_hpd rhs length mismatch");
    }
    ComplexVector x = checked_llt(a).solve(b);
    ensure_finite(x, "solve_hpd output");
    return x;
}

ComplexMatrix solve_hpd(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) {
        throw_error(ErrorCode::DimensionMismatch, "solve_hpd rhs row mismatch");
    }
    ComplexMatrix x = checked_llt(a).solve(b);
    ensure_finite(x, "solve_hpd output");
    return x;
}

}  // namespace cgsp
