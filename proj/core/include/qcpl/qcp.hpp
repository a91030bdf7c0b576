#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qcpl/errors.hpp"
#include "qcpl/ncwords.hpp"
#include "qcpl/numop.hpp"

namespace qcpl {

namespace thresholds {
/// Relative singular-value cutoff separating "kernel" from "invertible part".
inline constexpr double kSpectralTol = 1e-10;
/// Pass level for identities restricted to the trusted block.
inline constexpr double kTrustedPass = 1e-8;
/// Residuals above this abort the run instead of merely failing a check.
inline constexpr double kHardFail = 1e-4;
/// Pass level for Fourier-coefficient symbol comparisons.
inline constexpr double kSymbolPass = 1e-6;
/// Scatter gate for trusting a sampled symbol coefficient (10x kSymbolPass).
inline constexpr double kSymbolScatter = 1e-5;
/// Pass level for gauge-invariance identities.
inline constexpr double kGaugePass = 1e-10;
/// Seed projector trace tolerance (pass) and hard abort level.
inline constexpr double kSeedTracePass = 1e-6;
inline constexpr double kSeedTraceHard = 1e-3;
/// Gram deviation above this means the truncation is too small.
inline constexpr double kGramHard = 1e-4;
/// Basis mass allowed on the margin band before aborting.
inline constexpr double kSupportHard = 1e-6;
}  // namespace thresholds

/// Parameter bundle governing one numerical run on the N x N corner
/// truncation of l^2(Z>=0). Indices >= n - margin are untrusted: relation
/// defects of the corner truncation live in that band.
struct TruncationContext {
    double q;
    double c;
    Complex t1;
    int n;
    double tol;
    int margin;

    /// Validates q > 1, c > 0, |t1| = 1 and 0 < margin < n/2; margin < 0
    /// selects the default n/4.
    TruncationContext(double q_, double c_, Complex t1_, int n_,
                      double tol_ = thresholds::kSpectralTol, int margin_ = -1);

    int trusted() const { return n - margin; }
};

/// One of the two affine maps whose backward orbits pin the essential
/// spectra: f1(s) = c + q^-2 (s - c) and f2(s) = 1 + q^-2 (s - 1).
struct AffineContraction {
    double fixed_point;
    double ratio;  // q^-2

    double operator()(double s) const { return fixed_point + ratio * (s - fixed_point); }
    double inverse(double s) const { return fixed_point + (s - fixed_point) / ratio; }

    static AffineContraction f1(double q, double c) { return {c, 1.0 / (q * q)}; }
    static AffineContraction f2(double q) { return {1.0, 1.0 / (q * q)}; }
};

/// The eigenvalue ladder c_k of x1*x1 on the v-basis and its companion
/// c'_k = 1 + q^-2 c - q^-2 c_k (the x2*x2 ladder), both 1-based.
struct EigenSequence {
    double q = 0;
    double c = 0;
    std::vector<double> values;
    std::vector<double> companion;

    int kmax() const { return static_cast<int>(values.size()); }
    double value(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
    double companion_value(int k) const { return companion.at(static_cast<std::size_t>(k - 1)); }
    /// Shift weight sqrt(c_{k+2}) * sqrt(c'_k); requires k + 2 <= kmax.
    double weight(int k) const;
};

/// Recursion c_1 = 0, c_2 = 1 + c, c_{k+2} = c - q^-2 c + q^-2 c_k in doubles.
EigenSequence eigen_sequence(double q, double c, int kmax);
/// Same recursion in exact rational arithmetic.
std::vector<Rational> eigen_sequence_exact(const Rational& q, const Rational& c, int kmax);
/// Closed forms c_{2n} = q^{-2(n-1)} + c, c_{2n+1} = (1 - q^{-2n}) c, exact.
std::vector<Rational> eigen_sequence_closed(const Rational& q, const Rational& c, int kmax);

/// Corner truncations of the generator matrices: alpha has superdiagonal
/// sqrt(1 - q^{-2(n+1)}), gamma is diag(q^{-n}).
std::pair<Matrix, Matrix> build_alpha_gamma(const TruncationContext& ctx);

/// x1 = sqrt(c) t1 alpha + t2 gamma (upper bidiagonal) and
/// x2 = -q^-1 sqrt(c) t1 gamma + t2 alpha* (lower bidiagonal), t2 = conj(t1).
std::pair<Matrix, Matrix> build_x_pair(const TruncationContext& ctx);

/// Closed-form kernel vector of x1: z_0 = 1 and
/// z_n = (-1)^n t2^n q^{-n(n-1)/2} c^{-n/2} t1^{-n} prod_j (1-q^{-2j})^{-1/2}.
Vector kernel_vector_x1(const TruncationContext& ctx, int length);

/// Numeric realization of a symbolic element: evaluates each coefficient at
/// (q, c, t1) and substitutes the truncated generator matrices.
Matrix realize(const NCElement& element, const Matrix& alpha, const Matrix& gamma,
               const TruncationContext& ctx);

/// The polar partial isometries x~i = xi * f(xi* xi) together with the
/// small-singular-value bookkeeping. Small singular directions are classified
/// by support: interior (trusted-block) kernels are the operator-theoretic
/// ones; margin-supported ones are corner-truncation artifacts.
struct TildePair {
    Matrix x1t;
    Matrix x2t;
    int x1_interior_null = 0;  // expected 1 (the genuine kernel line)
    int x2_interior_null = 0;  // expected 0 (x2 is injective)
    int x1_boundary_null = 0;
    int x2_boundary_null = 0;
    double sigma_min_x1 = 0;
    double sigma_min_x2 = 0;
};

/// Throws DegenerateTruncation unless x1 has exactly one interior
/// near-kernel direction and x2 has none.
TildePair build_tilde_pair(const TruncationContext& ctx, const Matrix& x1, const Matrix& x2);

/// Seed projections p1 = 1 - x1t* x1t and p2 = x1t* (1 - x2t x2t*) x1t with
/// their dominant unit eigenvectors v1, v2 (phase-fixed: first significant
/// coordinate real positive).
struct SeedVectors {
    Matrix p1;
    Matrix p2;
    Vector v1;
    Vector v2;
    double trace_p1 = 0;
    double trace_p2 = 0;
    double idem_p1 = 0;  // ||p^2 - p||
    double idem_p2 = 0;
    double seed_overlap = 0;  // |<v1, v2>|
};

/// Throws DecompositionFailure if either trace deviates from 1 by more
/// than thresholds::kSeedTraceHard.
SeedVectors seed_vectors(const TruncationContext& ctx, const Matrix& x1t, const Matrix& x2t);

/// v_1 = v1, v_2 = v2, v_{k+2} = shift v_k for shift = x1t* x2t. Returns
/// count vectors (count >= 2). Enforces the support-decay cap and the Gram
/// hard threshold (TruncationTooSmall).
std::vector<Vector> build_v_basis(const TruncationContext& ctx, const Matrix& shift,
                                  const Vector& v1, const Vector& v2, int count);

/// max_{i,j} |<v_i, v_j> - delta_ij|.
double gram_max_deviation(const std::vector<Vector>& basis);

/// Squared-norm fraction of v on the margin band (indices >= ctx.trusted()).
double margin_mass(const TruncationContext& ctx, const Vector& v);

struct EigenRow {
    int k;
    double formula;
    double measured;
    double residual;  // ||x1*x1 v_k - c_k v_k||
};

struct WeightRow {
    int k;
    double formula;
    Complex measured;  // <v_{k+2}, x1*x2 v_k>
    double residual;   // |measured - formula|
    double leakage;    // off-shift mass of x1*x2 v_k within the basis span
};

struct H0Probe {
    int complement_dim = 0;
    std::optional<double> max_deviation;  // max |<u, x1*x1 u> - c|, absent if empty
};

/// Everything one decomposition run measures against the closed forms.
struct DecompositionReport {
    double q = 0, c = 0;
    Complex t1;
    int n = 0, margin = 0;
    int basis_size = 0;

    std::vector<Vector> basis;
    std::vector<EigenRow> eigenvalues;
    std::vector<WeightRow> weights;

    double gram_max_dev = 0;
    double max_margin_mass = 0;
    double intertwine_residual = 0;
    double matrix_unit_map_residual = 0;    // ||eps^{(1)}_{1,0} v1 - v3||
    double matrix_unit_annih_residual = 0;  // max(||eps v2||, ||eps v4||)

    double trace_p1 = 0, trace_p2 = 0, idem_p1 = 0, idem_p2 = 0, seed_overlap = 0;
    double kernel_overlap = 0;   // |<v1, z/||z||>| against the closed-form kernel
    double kernel_residual = 0;  // ||x1 z|| / ||z||
    double x2t_isometry_defect = 0;    // ||x2t* x2t - 1|| on the trusted block
    double x1t_coisometry_defect = 0;  // ||x1t x1t* - 1|| on the trusted block
    int x1_interior_null = 0, x2_interior_null = 0;

    H0Probe h0;
    int wold_unitary_dim_estimate = 0;
};

/// Residual measurements on a prepared basis. Throws VerificationFailure
/// (with the offending k) if any monitored residual exceeds
/// thresholds::kHardFail.
DecompositionReport measure_decomposition(const TruncationContext& ctx, const Matrix& x1,
                                          const Matrix& x2, const Matrix& shift, const Matrix& p1,
                                          const std::vector<Vector>& basis,
                                          const EigenSequence& seq);

/// Orthogonal complement of span(basis) inside the trusted block: its
/// dimension and the spread of <u, x1*x1 u> around c. A probe only; no claim
/// that the complement models the unitary-part subspace.
H0Probe h0_probe(const TruncationContext& ctx, const std::vector<Vector>& basis);

/// All intermediate operators of one decomposition run, for consumers that
/// keep working with them (symbol sampling, index counts, reports).
struct Pipeline {
    Matrix x1;
    Matrix x2;
    TildePair tilde;
    Matrix shift;  // x1t* x2t
    SeedVectors seeds;
    std::vector<Vector> basis;
    EigenSequence seq;
    DecompositionReport report;
};

/// Full pipeline: generators -> polar isometries -> seeds -> v-basis ->
/// measurements -> probe.
Pipeline run_pipeline(const TruncationContext& ctx, int basis_count);

/// Shorthand for run_pipeline(...).report.
DecompositionReport run_decomposition(const TruncationContext& ctx, int basis_count);

/// Gauge-redundancy evidence across circle parameters.
struct GaugeCheck {
    std::vector<Complex> t_values;
    double spectrum_max_dev = 0;      // eigenvalues of x1*x1 across t
    double singular_max_dev = 0;      // singular values of x1*x2 across t
    double conjugation_residual = 0;  // max-entry defect of D x(t) D* = t^2 x(1)
};

/// (a) spectra of x1*x1 and singular values of x1*x2 are t-independent;
/// (b) with D = diag(t^{2k}) on e_k, D (x1*x2 at t) D* = t^2 (x1*x2 at 1).
GaugeCheck gauge_check(const TruncationContext& ctx, const std::vector<Complex>& t_list);

/// The fixed-gauge generators X1 = sqrt(c) alpha + gamma and
/// X2 = -q^-1 sqrt(c) gamma + alpha*, i.e. the x pair at t1 = 1.
std::pair<Matrix, Matrix> fixed_gauge_generators(double q, double c, int n);

}  // namespace qcpl
