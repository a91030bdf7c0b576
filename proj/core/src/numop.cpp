#include "qcpl/numop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcpl {

Matrix SpectralFactorization::reconstruct() const {
    return left * values.cast<Complex>().asDiagonal() * right.adjoint();
}

double SpectralFactorization::reconstruction_residual(const Matrix& a) const {
    double scale = operator_norm(a);
    if (scale == 0.0) return operator_norm(reconstruct());
    return operator_norm(a - reconstruct()) / scale;
}

double SpectralFactorization::orthonormality_defect() const {
    auto defect = [](const Matrix& q) {
        return operator_norm(q.adjoint() * q - Matrix::Identity(q.cols(), q.cols()));
    };
    return std::max(defect(left), defect(right));
}

double operator_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    // sqrt of the largest eigenvalue of A*A; cheaper than a full SVD and
    // accurate enough for residual reporting.
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

double hermitian_defect(const Matrix& a) { return (a - a.adjoint()).norm(); }

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite())
        throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

SpectralFactorization hermitian_eig(const Matrix& a) {
    require_finite(a, "hermitian_eig");
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
    double scale = a.norm();
    if (hermitian_defect(a) > 1e-10 * std::max(scale, 1e-300))
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    Matrix sym = (a + a.adjoint()) / 2.0;  // kill roundoff asymmetry
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: solver failed");
    SpectralFactorization out;
    out.kind = SpectralFactorization::Kind::Hermitian;
    out.values = es.eigenvalues();
    out.left = es.eigenvectors();
    out.right = out.left;
    require_finite(out.left, "hermitian_eig");
    return out;
}

SpectralFactorization svd_factor(const Matrix& a) {
    require_finite(a, "svd_factor");
    SpectralFactorization out;
    out.kind = SpectralFactorization::Kind::Svd;
    if (a.rows() >= 32 && a.cols() >= 32) {
        Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.values = svd.singularValues();
        out.left = svd.matrixU();
        out.right = svd.matrixV();
    } else {
        Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.values = svd.singularValues();
        out.left = svd.matrixU();
        out.right = svd.matrixV();
    }
    require_finite(out.left, "svd_factor");
    require_finite(out.right, "svd_factor");
    return out;
}

Matrix truncated_inverse_sqrt(const Matrix& a, double cutoff) {
    SpectralFactorization f = hermitian_eig(a);
    if (f.values.minCoeff() < -cutoff)
        throw std::domain_error("truncated_inverse_sqrt: input has a negative eigenvalue");
    Eigen::VectorXd mapped(f.values.size());
    for (Eigen::Index i = 0; i < f.values.size(); ++i)
        mapped(i) = f.values(i) > cutoff ? 1.0 / std::sqrt(f.values(i)) : 0.0;
    Matrix out = f.left * mapped.cast<Complex>().asDiagonal() * f.left.adjoint();
    require_finite(out, "truncated_inverse_sqrt");
    return out;
}

Matrix polar_partial_isometry(const Matrix& t, double sv_cutoff) {
    require_finite(t, "polar_partial_isometry");
    Matrix w = t * truncated_inverse_sqrt(t.adjoint() * t, sv_cutoff * sv_cutoff);
    require_finite(w, "polar_partial_isometry");
    return w;
}

}  // namespace qcpl
