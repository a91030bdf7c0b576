#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qcpl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Spectral factorization of a dense operator: either a Hermitian
/// eigendecomposition A = Q diag(values) Q* (values ascending, left == right)
/// or an SVD A = U diag(values) V* (values descending nonnegative).
struct SpectralFactorization {
    enum class Kind { Hermitian, Svd };

    Kind kind;
    Eigen::VectorXd values;
    Matrix left;
    Matrix right;

    Matrix reconstruct() const;
    /// ||A - reconstruct()|| / ||A|| in operator norm (largest singular value).
    double reconstruction_residual(const Matrix& a) const;
    /// max over the factor matrices of ||Q*Q - I|| (operator norm).
    double orthonormality_defect() const;
};

/// Largest singular value.
double operator_norm(const Matrix& a);

/// ||A - A*|| in Frobenius norm, the Hermitian-precondition scale.
double hermitian_defect(const Matrix& a);

/// Throws std::invalid_argument if any entry is NaN or Inf.
void require_finite(const Matrix& a, const char* what);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Precondition ||A - A*||_F <= 1e-10 * ||A||_F; violations throw
/// std::invalid_argument.
SpectralFactorization hermitian_eig(const Matrix& a);

/// Full SVD with singular values descending.
SpectralFactorization svd_factor(const Matrix& a);

/// Functional calculus f(A) for positive semidefinite Hermitian A with
/// f(x) = x^-1/2 on eigenvalues above cutoff and f = 0 at or below it.
/// Eigenvalues below -cutoff violate the positivity precondition and throw
/// std::domain_error.
Matrix truncated_inverse_sqrt(const Matrix& a, double cutoff);

/// Polar partial isometry W = T * f(T*T) with f as above; sv_cutoff
/// thresholds singular values of T (the cutoff on T*T eigenvalues is its
/// square), so W*W is the orthogonal projector onto the right singular
/// subspace with sigma > sv_cutoff and W agrees with U 1_{sigma>sv_cutoff} V*.
/// The squared cutoff must sit above the eigensolver noise floor
/// (eps * ||T||^2); below that, split kernels through an SVD instead.
Matrix polar_partial_isometry(const Matrix& t, double sv_cutoff);

}  // namespace qcpl
