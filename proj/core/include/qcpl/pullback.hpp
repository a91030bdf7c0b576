#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcpl/numop.hpp"
#include "qcpl/qcp.hpp"

namespace qcpl {

/// Sampled Fourier coefficients of the asymptotic Toeplitz symbol of an
/// operator along a basis chain, with the per-sample scatter that gates how
/// far each coefficient can be trusted.
struct SymbolSample {
    std::map<int, Complex> coeffs;
    std::map<int, double> scatter;
    int n_min = 0;
    int n_max = 0;
    /// 1 or 2: the v-parity chain (frequencies step by 2 in the v index);
    /// 0: consecutive indices of the supplied chain.
    int subspace = 0;

    Complex coeff(int d) const;
    double max_scatter() const;
};

/// Band averages <v_{k+2d}, T v_k> over the window k in [n_min, n_max],
/// k = subspace (mod 2), for subspace in {1, 2}; subspace 0 averages
/// <b_{k+d}, T b_k> over consecutive indices. Window bounds are 1-based
/// basis indices; pass -1 for the defaults (K/2 and K-2). Throws
/// UnreliableSymbol when any frequency scatters beyond scatter_tol.
SymbolSample symbol_estimate(const Matrix& t, const std::vector<Vector>& basis, int subspace,
                             int max_freq, int n_min = -1, int n_max = -1,
                             double scatter_tol = thresholds::kSymbolScatter);

/// Same estimator on the standard basis e_n (plain matrix bands); the window
/// is in 0-based matrix indices.
SymbolSample symbol_estimate_standard(const Matrix& t, int n_min, int n_max, int max_freq,
                                      double scatter_tol = thresholds::kSymbolScatter);

/// Winding number of theta -> sum_d coeff(d) e^{i d theta} over grid_size
/// points of the circle. Throws IndexUndefined if the symbol modulus drops
/// below min_modulus anywhere on the grid. The Fredholm index of a
/// Toeplitz-type operator is minus this winding.
int winding_index(const SymbolSample& sample, int grid_size,
                  double min_modulus = 10.0 * thresholds::kSymbolPass);

struct PullbackEntry {
    std::string name;
    SymbolSample h1;
    SymbolSample h2;
    double max_coeff_dev = 0;
    bool pass = false;
};

struct PullbackReport {
    std::vector<PullbackEntry> entries;
    bool pass = false;
};

/// Pullback membership evidence: for each operator the symbols sampled on the
/// two v-parity chains must agree coefficient-wise within tol.
PullbackReport pullback_check(const std::vector<std::pair<std::string, Matrix>>& ops,
                              const std::vector<Vector>& basis, int max_freq,
                              double tol = thresholds::kSymbolPass);

/// Compact-remainder evidence: entries of T restricted to the sample's chain
/// minus the model Toeplitz matrix built from the sampled symbol, maximized
/// outside the top-left corner_size x corner_size corner.
struct RemainderFragment {
    int subspace = 0;
    double max_outside_corner = 0;
};

RemainderFragment compact_remainder_check(const Matrix& t, const std::vector<Vector>& basis,
                                          const SymbolSample& sample, int corner_size);

}  // namespace qcpl
