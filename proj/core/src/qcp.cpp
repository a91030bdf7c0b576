#include "qcpl/qcp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcpl {

namespace {

Eigen::VectorXd singular_values_only(const Matrix& a) {
    if (a.rows() >= 32) {
        Eigen::BDCSVD<Matrix> svd(a);
        return svd.singularValues();
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues();
}

// Rotates v so its first significant coordinate is real positive.
void phase_fix(Vector& v) {
    double maxabs = v.cwiseAbs().maxCoeff();
    if (maxabs == 0.0) return;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double m = std::abs(v(i));
        if (m > 1e-8 * maxabs) {
            v *= std::conj(v(i)) / m;
            return;
        }
    }
}

}  // namespace

TruncationContext::TruncationContext(double q_, double c_, Complex t1_, int n_, double tol_,
                                     int margin_)
    : q(q_), c(c_), t1(t1_), n(n_), tol(tol_), margin(margin_ < 0 ? n_ / 4 : margin_) {
    if (!(q > 1.0)) throw std::domain_error("TruncationContext: requires q > 1");
    if (!(c > 0.0)) throw std::domain_error("TruncationContext: requires c > 0");
    if (std::abs(std::abs(t1) - 1.0) > 1e-9)
        throw std::domain_error("TruncationContext: requires |t1| = 1");
    if (n < 4) throw std::domain_error("TruncationContext: dimension too small");
    if (!(tol > 0.0) || tol >= 1.0) throw std::domain_error("TruncationContext: bad tolerance");
    if (margin <= 0 || margin >= n / 2)
        throw std::domain_error("TruncationContext: requires 0 < margin < n/2");
}

double EigenSequence::weight(int k) const {
    return std::sqrt(value(k + 2)) * std::sqrt(companion_value(k));
}

EigenSequence eigen_sequence(double q, double c, int kmax) {
    if (kmax < 2) throw std::invalid_argument("eigen_sequence: kmax must be >= 2");
    EigenSequence seq;
    seq.q = q;
    seq.c = c;
    seq.values.resize(static_cast<std::size_t>(kmax));
    const double qi2 = 1.0 / (q * q);
    seq.values[0] = 0.0;
    seq.values[1] = 1.0 + c;
    for (int k = 2; k < kmax; ++k) seq.values[static_cast<std::size_t>(k)] =
        c - qi2 * c + qi2 * seq.values[static_cast<std::size_t>(k - 2)];
    seq.companion.resize(seq.values.size());
    for (std::size_t i = 0; i < seq.values.size(); ++i)
        seq.companion[i] = 1.0 + qi2 * c - qi2 * seq.values[i];
    return seq;
}

std::vector<Rational> eigen_sequence_exact(const Rational& q, const Rational& c, int kmax) {
    if (kmax < 2) throw std::invalid_argument("eigen_sequence_exact: kmax must be >= 2");
    const Rational qi2 = rational_pow(q, -2);
    std::vector<Rational> out(static_cast<std::size_t>(kmax));
    out[0] = Rational(0);
    out[1] = Rational(1) + c;
    for (int k = 2; k < kmax; ++k)
        out[static_cast<std::size_t>(k)] = c - qi2 * c + qi2 * out[static_cast<std::size_t>(k - 2)];
    return out;
}

std::vector<Rational> eigen_sequence_closed(const Rational& q, const Rational& c, int kmax) {
    if (kmax < 2) throw std::invalid_argument("eigen_sequence_closed: kmax must be >= 2");
    std::vector<Rational> out(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        if (k % 2 == 0) {
            long n = k / 2;
            out[static_cast<std::size_t>(k - 1)] = rational_pow(q, -2 * (n - 1)) + c;
        } else {
            long n = (k - 1) / 2;
            out[static_cast<std::size_t>(k - 1)] = (Rational(1) - rational_pow(q, -2 * n)) * c;
        }
    }
    return out;
}

std::pair<Matrix, Matrix> build_alpha_gamma(const TruncationContext& ctx) {
    const int n = ctx.n;
    Matrix alpha = Matrix::Zero(n, n);
    Matrix gamma = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) gamma(i, i) = std::pow(ctx.q, -i);
    for (int i = 0; i + 1 < n; ++i)
        alpha(i, i + 1) = std::sqrt(1.0 - std::pow(ctx.q, -2.0 * (i + 1)));
    return {alpha, gamma};
}

std::pair<Matrix, Matrix> build_x_pair(const TruncationContext& ctx) {
    auto [alpha, gamma] = build_alpha_gamma(ctx);
    const Complex t1 = ctx.t1;
    const Complex t2 = std::conj(t1);
    const double sc = std::sqrt(ctx.c);
    Matrix x1 = sc * t1 * alpha + t2 * gamma;
    Matrix x2 = -(sc / ctx.q) * t1 * gamma + t2 * alpha.adjoint();
    return {x1, x2};
}

Vector kernel_vector_x1(const TruncationContext& ctx, int length) {
    if (length < 1 || length > ctx.n)
        throw std::invalid_argument("kernel_vector_x1: length out of range");
    Vector z(length);
    z(0) = 1.0;
    const Complex t1 = ctx.t1;
    const Complex t2 = std::conj(t1);
    const double sc = std::sqrt(ctx.c);
    for (int i = 1; i < length; ++i) {
        // z_i / z_{i-1} = -t2 q^{-(i-1)} / (sqrt(c) t1 sqrt(1 - q^{-2i}))
        Complex ratio = -t2 * std::pow(ctx.q, -(i - 1)) /
                        (sc * t1 * std::sqrt(1.0 - std::pow(ctx.q, -2.0 * i)));
        z(i) = z(i - 1) * ratio;
    }
    return z;
}

Matrix realize(const NCElement& element, const Matrix& alpha, const Matrix& gamma,
               const TruncationContext& ctx) {
    const auto n = alpha.rows();
    Matrix alpha_adj = alpha.adjoint();
    Matrix out = Matrix::Zero(n, n);
    for (const auto& [w, coeff] : element.terms()) {
        Matrix word = Matrix::Identity(n, n);
        for (int i = 0; i < w.gpow; ++i) word = word * gamma;
        const Matrix& ladder = w.ladder > 0 ? alpha : alpha_adj;
        for (int i = 0; i < std::abs(w.ladder); ++i) word = word * ladder;
        out += coeff.eval(ctx.q, ctx.c, ctx.t1) * word;
    }
    return out;
}

namespace {

struct TildeResult {
    Matrix tilde;
    int interior = 0;
    int boundary = 0;
    double sigma_min = 0;
};

// x * f(x*x) computed through the SVD as U 1_{sigma > cut} V*. The relative
// cutoff tol * sigma_max sits far below the eigenvalue resolution of the Gram
// matrix (eps * sigma_max^2), so only singular values of x itself can resolve
// it. Near-kernel directions are classified by the support of their right
// singular vectors.
TildeResult make_tilde(const TruncationContext& ctx, const Matrix& x) {
    SpectralFactorization svd = svd_factor(x);
    const double sv_cut = ctx.tol * svd.values.maxCoeff();
    TildeResult res;
    res.sigma_min = svd.values.minCoeff();
    Eigen::VectorXd keep(svd.values.size());
    for (Eigen::Index i = 0; i < svd.values.size(); ++i) {
        if (svd.values(i) > sv_cut) {
            keep(i) = 1.0;
        } else {
            keep(i) = 0.0;
            Vector dir = svd.right.col(i);
            (margin_mass(ctx, dir) < 0.5 ? res.interior : res.boundary) += 1;
        }
    }
    res.tilde = svd.left * keep.cast<Complex>().asDiagonal() * svd.right.adjoint();
    return res;
}

}  // namespace

TildePair build_tilde_pair(const TruncationContext& ctx, const Matrix& x1, const Matrix& x2) {
    TildeResult r1 = make_tilde(ctx, x1);
    TildeResult r2 = make_tilde(ctx, x2);
    if (r1.interior != 1 || r1.boundary != 0) {
        std::ostringstream os;
        os << "build_tilde_pair: x1 truncation has " << r1.interior << " interior and "
           << r1.boundary << " boundary near-kernel directions (want 1 interior); raise N";
        throw DegenerateTruncation(os.str());
    }
    if (r2.interior != 0) {
        std::ostringstream os;
        os << "build_tilde_pair: x2 truncation has " << r2.interior
           << " interior near-kernel directions (want none); raise N";
        throw DegenerateTruncation(os.str());
    }
    TildePair out;
    out.x1t = std::move(r1.tilde);
    out.x2t = std::move(r2.tilde);
    out.x1_interior_null = r1.interior;
    out.x2_interior_null = r2.interior;
    out.x1_boundary_null = r1.boundary;
    out.x2_boundary_null = r2.boundary;
    out.sigma_min_x1 = r1.sigma_min;
    out.sigma_min_x2 = r2.sigma_min;
    return out;
}

SeedVectors seed_vectors(const TruncationContext&, const Matrix& x1t, const Matrix& x2t) {
    const auto n = x1t.rows();
    const Matrix id = Matrix::Identity(n, n);
    SeedVectors out;
    out.p1 = id - x1t.adjoint() * x1t;
    out.p2 = x1t.adjoint() * (id - x2t * x2t.adjoint()) * x1t;
    out.trace_p1 = out.p1.trace().real();
    out.trace_p2 = out.p2.trace().real();
    out.idem_p1 = operator_norm(out.p1 * out.p1 - out.p1);
    out.idem_p2 = operator_norm(out.p2 * out.p2 - out.p2);
    if (std::abs(out.trace_p1 - 1.0) > thresholds::kSeedTraceHard ||
        std::abs(out.trace_p2 - 1.0) > thresholds::kSeedTraceHard) {
        std::ostringstream os;
        os << "seed_vectors: projection traces " << out.trace_p1 << ", " << out.trace_p2
           << " deviate from 1 beyond " << thresholds::kSeedTraceHard;
        throw DecompositionFailure(os.str());
    }
    SpectralFactorization e1 = hermitian_eig(out.p1);
    SpectralFactorization e2 = hermitian_eig(out.p2);
    out.v1 = e1.left.col(n - 1);  // eigenvalues ascending: dominant is last
    out.v2 = e2.left.col(n - 1);
    phase_fix(out.v1);
    phase_fix(out.v2);
    out.seed_overlap = std::abs(out.v1.dot(out.v2));
    return out;
}

std::vector<Vector> build_v_basis(const TruncationContext& ctx, const Matrix& shift,
                                  const Vector& v1, const Vector& v2, int count) {
    if (count < 2) throw std::invalid_argument("build_v_basis: count must be >= 2");
    if (count > ctx.trusted())
        throw std::invalid_argument("build_v_basis: count exceeds the trusted block");
    std::vector<Vector> basis;
    basis.reserve(static_cast<std::size_t>(count));
    basis.push_back(v1);
    basis.push_back(v2);
    for (int k = 2; k < count; ++k) basis.push_back(shift * basis[static_cast<std::size_t>(k - 2)]);
    double worst_mass = 0.0;
    for (const Vector& v : basis) worst_mass = std::max(worst_mass, margin_mass(ctx, v));
    if (worst_mass > thresholds::kSupportHard) {
        std::ostringstream os;
        os << "build_v_basis: basis mass " << worst_mass
           << " on the margin band exceeds " << thresholds::kSupportHard << "; raise N";
        throw TruncationTooSmall(os.str());
    }
    double gram = gram_max_deviation(basis);
    if (gram > thresholds::kGramHard) {
        std::ostringstream os;
        os << "build_v_basis: Gram deviation " << gram << " exceeds "
           << thresholds::kGramHard << "; raise N";
        throw TruncationTooSmall(os.str());
    }
    return basis;
}

double gram_max_deviation(const std::vector<Vector>& basis) {
    double dev = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            Complex g = basis[i].dot(basis[j]);
            double target = i == j ? 1.0 : 0.0;
            dev = std::max(dev, std::abs(g - target));
        }
    }
    return dev;
}

double margin_mass(const TruncationContext& ctx, const Vector& v) {
    double total = v.squaredNorm();
    if (total == 0.0) return 0.0;
    return v.tail(ctx.margin).squaredNorm() / total;
}

DecompositionReport measure_decomposition(const TruncationContext& ctx, const Matrix& x1,
                                          const Matrix& x2, const Matrix& shift, const Matrix& p1,
                                          const std::vector<Vector>& basis,
                                          const EigenSequence& seq) {
    const int big_k = static_cast<int>(basis.size());
    if (seq.kmax() < big_k + 2)
        throw std::invalid_argument("measure_decomposition: eigen sequence too short");

    DecompositionReport rep;
    rep.q = ctx.q;
    rep.c = ctx.c;
    rep.t1 = ctx.t1;
    rep.n = ctx.n;
    rep.margin = ctx.margin;
    rep.basis_size = big_k;
    rep.basis = basis;
    rep.gram_max_dev = gram_max_deviation(basis);
    for (const Vector& v : basis) rep.max_margin_mass = std::max(rep.max_margin_mass, margin_mass(ctx, v));

    const Matrix x1adj_x1 = x1.adjoint() * x1;
    const Matrix x1adj_x2 = x1.adjoint() * x2;
    const Matrix x2adj_x2 = x2.adjoint() * x2;

    for (int k = 1; k <= big_k; ++k) {
        const Vector& v = basis[static_cast<std::size_t>(k - 1)];
        Vector av = x1adj_x1 * v;
        EigenRow row;
        row.k = k;
        row.formula = seq.value(k);
        row.measured = v.dot(av).real();
        row.residual = (av - seq.value(k) * v).norm();
        rep.eigenvalues.push_back(row);
    }

    for (int k = 1; k <= big_k - 2; ++k) {
        const Vector& v = basis[static_cast<std::size_t>(k - 1)];
        Vector y = x1adj_x2 * v;
        WeightRow row;
        row.k = k;
        row.formula = seq.weight(k);
        row.measured = basis[static_cast<std::size_t>(k + 1)].dot(y);
        row.residual = std::abs(row.measured - row.formula);
        double off = 0.0;
        for (int j = 1; j <= big_k; ++j) {
            if (j == k + 2) continue;
            off += std::norm(basis[static_cast<std::size_t>(j - 1)].dot(y));
        }
        row.leakage = std::sqrt(off);
        rep.weights.push_back(row);
    }

    const int t = ctx.trusted();
    const Matrix id = Matrix::Identity(ctx.n, ctx.n);
    Matrix commut = x1adj_x1 * shift - shift * ((1.0 + ctx.c) * id - x2adj_x2);
    rep.intertwine_residual = operator_norm(commut.topLeftCorner(t, t));

    if (big_k >= 4) {
        Matrix eps10 = shift * p1;  // the (1,0) matrix unit on the odd chain
        rep.matrix_unit_map_residual = (eps10 * basis[0] - basis[2]).norm();
        rep.matrix_unit_annih_residual =
            std::max((eps10 * basis[1]).norm(), (eps10 * basis[3]).norm());
    }

    // Hard-failure scan: anything beyond kHardFail aborts with the offending k.
    for (int k = 1; k <= big_k - 2; ++k) {
        const EigenRow& er = rep.eigenvalues[static_cast<std::size_t>(k - 1)];
        if (er.residual > thresholds::kHardFail ||
            std::abs(er.measured - er.formula) > thresholds::kHardFail) {
            std::ostringstream os;
            os << "measure_decomposition: eigenvalue check failed at k=" << k
               << " (measured " << er.measured << ", formula " << er.formula << ")";
            throw VerificationFailure(os.str(), k);
        }
        const WeightRow& wr = rep.weights[static_cast<std::size_t>(k - 1)];
        if (wr.residual > thresholds::kHardFail || wr.leakage > thresholds::kHardFail) {
            std::ostringstream os;
            os << "measure_decomposition: weight check failed at k=" << k << " (residual "
               << wr.residual << ", leakage " << wr.leakage << ")";
            throw VerificationFailure(os.str(), k);
        }
    }
    if (rep.intertwine_residual > thresholds::kHardFail)
        throw VerificationFailure("measure_decomposition: intertwining residual above hard threshold",
                                  0);
    return rep;
}

H0Probe h0_probe(const TruncationContext& ctx, const std::vector<Vector>& basis) {
    const int m = ctx.trusted();
    const int big_k = static_cast<int>(basis.size());
    H0Probe probe;
    probe.complement_dim = std::max(0, m - big_k);
    if (probe.complement_dim == 0) return probe;

    Matrix v_block(m, big_k);
    for (int j = 0; j < big_k; ++j) v_block.col(j) = basis[static_cast<std::size_t>(j)].head(m);
    Eigen::BDCSVD<Matrix> svd(v_block, Eigen::ComputeFullU);
    Matrix complement = svd.matrixU().rightCols(probe.complement_dim);

    auto [x1, x2] = build_x_pair(ctx);
    Matrix a_m = (x1.adjoint() * x1).topLeftCorner(m, m);
    Matrix w = a_m * complement;
    double dev = 0.0;
    for (Eigen::Index j = 0; j < complement.cols(); ++j)
        dev = std::max(dev, std::abs(complement.col(j).dot(w.col(j)).real() - ctx.c));
    probe.max_deviation = dev;
    return probe;
}

Pipeline run_pipeline(const TruncationContext& ctx, int basis_count) {
    Pipeline p;
    std::tie(p.x1, p.x2) = build_x_pair(ctx);
    p.tilde = build_tilde_pair(ctx, p.x1, p.x2);
    p.shift = p.tilde.x1t.adjoint() * p.tilde.x2t;
    p.seeds = seed_vectors(ctx, p.tilde.x1t, p.tilde.x2t);
    p.basis = build_v_basis(ctx, p.shift, p.seeds.v1, p.seeds.v2, basis_count);
    p.seq = eigen_sequence(ctx.q, ctx.c, basis_count + 2);

    DecompositionReport& rep = p.report;
    rep = measure_decomposition(ctx, p.x1, p.x2, p.shift, p.seeds.p1, p.basis, p.seq);

    rep.trace_p1 = p.seeds.trace_p1;
    rep.trace_p2 = p.seeds.trace_p2;
    rep.idem_p1 = p.seeds.idem_p1;
    rep.idem_p2 = p.seeds.idem_p2;
    rep.seed_overlap = p.seeds.seed_overlap;
    rep.x1_interior_null = p.tilde.x1_interior_null;
    rep.x2_interior_null = p.tilde.x2_interior_null;

    Vector z = kernel_vector_x1(ctx, ctx.n);
    double znorm = z.norm();
    rep.kernel_residual = (p.x1 * z).norm() / znorm;
    rep.kernel_overlap = std::abs(p.seeds.v1.dot(z)) / znorm;

    const int t = ctx.trusted();
    const Matrix id = Matrix::Identity(ctx.n, ctx.n);
    rep.x2t_isometry_defect =
        operator_norm((p.tilde.x2t.adjoint() * p.tilde.x2t - id).topLeftCorner(t, t));
    rep.x1t_coisometry_defect =
        operator_norm((p.tilde.x1t * p.tilde.x1t.adjoint() - id).topLeftCorner(t, t));

    rep.h0 = h0_probe(ctx, p.basis);
    rep.wold_unitary_dim_estimate = rep.h0.complement_dim;
    return p;
}

DecompositionReport run_decomposition(const TruncationContext& ctx, int basis_count) {
    return run_pipeline(ctx, basis_count).report;
}

GaugeCheck gauge_check(const TruncationContext& ctx, const std::vector<Complex>& t_list) {
    if (t_list.empty()) throw std::invalid_argument("gauge_check: empty parameter list");
    GaugeCheck out;
    out.t_values = t_list;

    std::vector<Eigen::VectorXd> spectra;
    std::vector<Eigen::VectorXd> singulars;
    std::vector<Matrix> cross;  // x1* x2 at each t
    for (Complex t : t_list) {
        TruncationContext ct(ctx.q, ctx.c, t, ctx.n, ctx.tol, ctx.margin);
        auto [x1, x2] = build_x_pair(ct);
        Matrix g = x1.adjoint() * x1;
        Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
        spectra.push_back(es.eigenvalues());
        Matrix xc = x1.adjoint() * x2;
        singulars.push_back(singular_values_only(xc));
        cross.push_back(std::move(xc));
    }
    for (std::size_t a = 0; a < t_list.size(); ++a) {
        for (std::size_t b = a + 1; b < t_list.size(); ++b) {
            out.spectrum_max_dev =
                std::max(out.spectrum_max_dev, (spectra[a] - spectra[b]).cwiseAbs().maxCoeff());
            out.singular_max_dev =
                std::max(out.singular_max_dev, (singulars[a] - singulars[b]).cwiseAbs().maxCoeff());
        }
    }

    // D diag(t^{2k}) on e_k conjugates the t-version onto t^2 times the t=1 version.
    TruncationContext c1(ctx.q, ctx.c, Complex(1.0, 0.0), ctx.n, ctx.tol, ctx.margin);
    auto [y1, y2] = build_x_pair(c1);
    Matrix base = y1.adjoint() * y2;
    for (std::size_t a = 0; a < t_list.size(); ++a) {
        Complex t = t_list[a];
        double theta = std::arg(t);
        Vector d(ctx.n);
        for (int i = 0; i < ctx.n; ++i) d(i) = std::polar(1.0, 2.0 * i * theta);
        Matrix conj_t = d.asDiagonal() * cross[a] * d.asDiagonal().inverse();
        Matrix defect = conj_t - (t * t) * base;
        out.conjugation_residual =
            std::max(out.conjugation_residual, defect.cwiseAbs().maxCoeff());
    }
    return out;
}

std::pair<Matrix, Matrix> fixed_gauge_generators(double q, double c, int n) {
    TruncationContext ctx(q, c, Complex(1.0, 0.0), n);
    return build_x_pair(ctx);
}

}  // namespace qcpl
