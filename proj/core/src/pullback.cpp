#include "qcpl/pullback.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcpl/errors.hpp"

namespace qcpl {

Complex SymbolSample::coeff(int d) const {
    auto it = coeffs.find(d);
    return it == coeffs.end() ? Complex{0.0, 0.0} : it->second;
}

double SymbolSample::max_scatter() const {
    double s = 0.0;
    for (const auto& [d, v] : scatter) s = std::max(s, v);
    return s;
}

namespace {

SymbolSample average_bands(const std::vector<std::vector<Complex>>& samples_per_freq,
                           const std::vector<int>& freqs, int n_min, int n_max, int subspace,
                           double scatter_tol) {
    SymbolSample out;
    out.n_min = n_min;
    out.n_max = n_max;
    out.subspace = subspace;
    for (std::size_t fi = 0; fi < freqs.size(); ++fi) {
        const auto& samples = samples_per_freq[fi];
        if (samples.empty()) continue;
        Complex mean{0.0, 0.0};
        for (Complex s : samples) mean += s;
        mean /= static_cast<double>(samples.size());
        double spread = 0.0;
        for (Complex s : samples) spread = std::max(spread, std::abs(s - mean));
        out.coeffs[freqs[fi]] = mean;
        out.scatter[freqs[fi]] = spread;
        if (spread > scatter_tol) {
            std::ostringstream os;
            os << "symbol_estimate: frequency " << freqs[fi] << " scatters by " << spread
               << " across the window (limit " << scatter_tol << ")";
            throw UnreliableSymbol(os.str());
        }
    }
    return out;
}

}  // namespace

SymbolSample symbol_estimate(const Matrix& t, const std::vector<Vector>& basis, int subspace,
                             int max_freq, int n_min, int n_max, double scatter_tol) {
    const int big_k = static_cast<int>(basis.size());
    if (subspace < 0 || subspace > 2)
        throw std::invalid_argument("symbol_estimate: subspace must be 0, 1 or 2");
    if (n_min < 0) n_min = big_k / 2;
    if (n_max < 0) n_max = big_k - 2;
    if (n_min < 1 || n_max > big_k || n_min > n_max)
        throw std::invalid_argument("symbol_estimate: bad window");

    const int step = subspace == 0 ? 1 : 2;
    std::vector<int> freqs;
    for (int d = -max_freq; d <= max_freq; ++d) freqs.push_back(d);
    std::vector<std::vector<Complex>> samples(freqs.size());

    // Cache T v_k for the window.
    std::vector<Vector> image(static_cast<std::size_t>(big_k));
    for (int k = n_min; k <= n_max; ++k) {
        if (subspace != 0 && (k % 2) != (subspace % 2)) continue;
        image[static_cast<std::size_t>(k - 1)] = t * basis[static_cast<std::size_t>(k - 1)];
    }
    for (std::size_t fi = 0; fi < freqs.size(); ++fi) {
        int d = freqs[fi];
        for (int k = n_min; k <= n_max; ++k) {
            if (subspace != 0 && (k % 2) != (subspace % 2)) continue;
            int target = k + step * d;
            if (target < 1 || target > big_k) continue;
            samples[fi].push_back(basis[static_cast<std::size_t>(target - 1)].dot(
                image[static_cast<std::size_t>(k - 1)]));
        }
    }
    return average_bands(samples, freqs, n_min, n_max, subspace, scatter_tol);
}

SymbolSample symbol_estimate_standard(const Matrix& t, int n_min, int n_max, int max_freq,
                                      double scatter_tol) {
    const int n = static_cast<int>(t.rows());
    if (n_min < 0 || n_max >= n || n_min > n_max)
        throw std::invalid_argument("symbol_estimate_standard: bad window");
    std::vector<int> freqs;
    for (int d = -max_freq; d <= max_freq; ++d) freqs.push_back(d);
    std::vector<std::vector<Complex>> samples(freqs.size());
    for (std::size_t fi = 0; fi < freqs.size(); ++fi) {
        int d = freqs[fi];
        for (int k = n_min; k <= n_max; ++k) {
            int row = k + d;
            if (row < 0 || row >= n) continue;
            samples[fi].push_back(t(row, k));
        }
    }
    return average_bands(samples, freqs, n_min, n_max, 0, scatter_tol);
}

int winding_index(const SymbolSample& sample, int grid_size, double min_modulus) {
    if (grid_size < 8) throw std::invalid_argument("winding_index: grid too coarse");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Complex> values(static_cast<std::size_t>(grid_size));
    for (int j = 0; j < grid_size; ++j) {
        double theta = two_pi * j / grid_size;
        Complex phi{0.0, 0.0};
        for (const auto& [d, coeff] : sample.coeffs)
            phi += coeff * std::polar(1.0, d * theta);
        if (std::abs(phi) < min_modulus) {
            std::ostringstream os;
            os << "winding_index: symbol modulus " << std::abs(phi) << " at theta=" << theta
               << " is below " << min_modulus;
            throw IndexUndefined(os.str());
        }
        values[static_cast<std::size_t>(j)] = phi;
    }
    double total = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        Complex ratio = values[static_cast<std::size_t>((j + 1) % grid_size)] /
                        values[static_cast<std::size_t>(j)];
        total += std::arg(ratio);
    }
    return static_cast<int>(std::lround(total / two_pi));
}

PullbackReport pullback_check(const std::vector<std::pair<std::string, Matrix>>& ops,
                              const std::vector<Vector>& basis, int max_freq, double tol) {
    PullbackReport rep;
    rep.pass = true;
    for (const auto& [name, op] : ops) {
        PullbackEntry entry;
        entry.name = name;
        entry.h1 = symbol_estimate(op, basis, 1, max_freq);
        entry.h2 = symbol_estimate(op, basis, 2, max_freq);
        for (int d = -max_freq; d <= max_freq; ++d)
            entry.max_coeff_dev =
                std::max(entry.max_coeff_dev, std::abs(entry.h1.coeff(d) - entry.h2.coeff(d)));
        entry.pass = entry.max_coeff_dev < tol;
        rep.pass = rep.pass && entry.pass;
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

RemainderFragment compact_remainder_check(const Matrix& t, const std::vector<Vector>& basis,
                                          const SymbolSample& sample, int corner_size) {
    const int big_k = static_cast<int>(basis.size());
    std::vector<int> chain;  // 1-based v indices of the sampled subspace
    if (sample.subspace == 0) {
        for (int k = 1; k <= big_k; ++k) chain.push_back(k);
    } else {
        for (int k = sample.subspace; k <= big_k; k += 2) chain.push_back(k);
    }
    const int m = static_cast<int>(chain.size());
    RemainderFragment frag;
    frag.subspace = sample.subspace;

    std::vector<Vector> image(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
        image[static_cast<std::size_t>(j)] =
            t * basis[static_cast<std::size_t>(chain[static_cast<std::size_t>(j)] - 1)];
    for (int row = 0; row < m; ++row) {
        for (int col = 0; col < m; ++col) {
            if (row < corner_size && col < corner_size) continue;
            Complex entry = basis[static_cast<std::size_t>(chain[static_cast<std::size_t>(row)] - 1)]
                                .dot(image[static_cast<std::size_t>(col)]);
            Complex model = sample.coeff(row - col);
            frag.max_outside_corner = std::max(frag.max_outside_corner, std::abs(entry - model));
        }
    }
    return frag;
}

}  // namespace qcpl
