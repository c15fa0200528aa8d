#pragma once

#include "cgsp/types.hpp"

namespace cgsp {

// max|A - A^H| <= rtol * max|A| (zero matrix counts as hermitian).
bool is_hermitian(const ComplexMatrix& a, double rtol = 1e-10);

struct EigenDecomposition {
    RealVector eigenvalues;  // descending
    ComplexMatrix vectors;   // unitary, column k pairs with eigenvalues[k]
};

// Dense eigendecomposition of a hermitian matrix. Eigenvalues are sorted in
// descending order and each eigenvector's phase is fixed so its largest
// magnitude component is real positive, which makes repeated calls on equal
// inputs return identical output.
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

// U^a for unitary U through its Schur form: eigenphases theta in (-pi, pi]
// are scaled to a*theta, so U^0 = I and powers compose along the principal
// branch. theta = pi stays at +pi.
ComplexMatrix fractional_unitary_power(const ComplexMatrix& u, double a);

// Moore-Penrose inverse of a hermitian PSD matrix: eigenvalues at or below
// rtol * lambda_max invert to zero. rtol < 0 selects the default 1e-10 * N.
ComplexMatrix pseudo_inverse(const ComplexMatrix& a, double rtol = -1.0);

// Cholesky solve for hermitian positive definite A.
ComplexVector solve_hpd(const ComplexMatrix& a, const ComplexVector& b);
ComplexMatrix solve_hpd(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cgsp
