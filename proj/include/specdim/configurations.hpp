// Thresholded spectra and additive-configuration counting: 3-term APs inside
// [-n, n] (brute force and FFT-accelerated, cross-checked) and grid counts of
// matrix configurations in R^n.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "specdim/errors.hpp"
#include "specdim/fft.hpp"
#include "specdim/measures.hpp"

namespace specdim {

// ---------------------------------------------------------------------------
// SpectrumWindow: sorted member set of [-n, n].

struct SpectrumWindow {
    int n = 0;
    double threshold = 0.0;
    std::vector<int> members; // sorted, unique, within [-n, n]

    SpectrumWindow() = default;
    SpectrumWindow(int window, std::vector<int> m, double tau = 0.0)
        : n(window), threshold(tau), members(std::move(m)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (int v : members)
            if (v < -n || v > n)
                throw ContractError("SpectrumWindow: member outside [-n, n]");
    }

    bool contains(int v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }

    SpectrumWindow negated() const {
        std::vector<int> neg;
        neg.reserve(members.size());
        for (auto it = members.rbegin(); it != members.rend(); ++it) neg.push_back(-*it);
        return SpectrumWindow(n, std::move(neg), threshold);
    }

    SpectrumWindow restricted(int smaller_n) const {
        std::vector<int> kept;
        for (int v : members)
            if (v >= -smaller_n && v <= smaller_n) kept.push_back(v);
        return SpectrumWindow(smaller_n, std::move(kept), threshold);
    }
};

// members = { m : |c(m)| > tau }; tau = 0 keeps exact nonvanishing.
inline SpectrumWindow extract_spectrum(const FourierTable& table, double tau) {
    if (tau < 0) throw ContractError("extract_spectrum: tau >= 0 required");
    std::vector<int> members;
    for (int m = -table.window; m <= table.window; ++m)
        if (std::abs(table.at(m)) > tau) members.push_back(m);
    return SpectrumWindow(table.window, std::move(members), tau);
}

// ---------------------------------------------------------------------------
// 3AP counting: t_n = #{(m, r) : m, m+r, m+2r all in S}. Pairs (m, r),
// including r = 0.

inline std::int64_t count_triples_brute(const SpectrumWindow& S) {
    if (S.members.empty()) return 0;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(2 * S.n + 1), 0);
    for (int v : S.members) mask[static_cast<std::size_t>(v + S.n)] = 1;
    std::int64_t count = 0;
    for (int m : S.members)
        for (int b : S.members) { // b = m + r
            const int c = 2 * b - m; // m + 2r
            if (c >= -S.n && c <= S.n && mask[static_cast<std::size_t>(c + S.n)]) ++count;
        }
    return count;
}

// FFT evaluation of t = sum_b 1_S(b) (1_S * 1_S)(2b). Exact integer recovery
// is guarded by a rounding-error bound; padding goes to the next power of two
// >= 4n+3 so the linear convolution cannot alias.
inline std::int64_t count_triples_fft(const SpectrumWindow& S) {
    if (S.members.empty()) return 0;
    const std::size_t len = static_cast<std::size_t>(2 * S.n + 1);
    // |conv| <= |S|; FFT roundoff ~ eps log2(L) |S|. Demand headroom.
    const double bound = 2.3e-16 * 24.0 * static_cast<double>(S.members.size() + 1);
    if (bound > 0.25)
        throw CapacityError("count_triples_fft: window too large for exact integer recovery");
    std::vector<double> ind(len, 0.0);
    for (int v : S.members) ind[static_cast<std::size_t>(v + S.n)] = 1.0;
    const auto conv = self_convolve_fft(ind, static_cast<std::size_t>(4 * S.n + 3));
    // conv[k] = #{(u,v) in S^2 : (u+n)+(v+n) = k}; sum index 2b -> k = 2(b+n).
    std::int64_t count = 0;
    for (int b : S.members) {
        const std::size_t k = static_cast<std::size_t>(2 * (b + S.n));
        count += std::llround(conv[k]);
    }
    return count;
}

// Trivial pairs per the counting convention: r = 0, or middle term m + r = 0;
// the double-counted (0,0) is removed. Always <= 4n+1.
inline std::int64_t trivial_triple_count(const SpectrumWindow& S) {
    std::int64_t count = 0;
    bool zero_in = S.contains(0);
    count += static_cast<std::int64_t>(S.members.size()); // r = 0
    for (int m : S.members)
        if (S.contains(-m) && zero_in) ++count; // (m, -m): terms m, 0, -m
    if (zero_in) --count; // (0,0) counted in both classes
    return count;
}

inline bool has_nontrivial_triples(const SpectrumWindow& S) {
    return count_triples_brute(S) > trivial_triple_count(S);
}

// ---------------------------------------------------------------------------
// Growth exponent: least-squares slope of log t_n against log n.

struct GrowthFit {
    double beta = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0; // in log space
};

inline GrowthFit growth_exponent(const std::vector<std::pair<double, double>>& counts) {
    if (counts.size() < 4)
        throw ContractError("growth_exponent: need at least 4 sample points");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].second <= 0.0)
            throw ContractError("growth_exponent: zero count leaves log undefined");
        if (i > 0 && counts[i].first <= counts[i - 1].first)
            throw ContractError("growth_exponent: n must be strictly increasing");
    }
    const std::size_t k = counts.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [n, t] : counts) {
        const double x = std::log(n), y = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    GrowthFit fit;
    const double denom = k * sxx - sx * sx;
    fit.beta = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.beta * sx) / k;
    for (const auto& [n, t] : counts) {
        const double resid = std::abs(std::log(t) - (fit.intercept + fit.beta * std::log(n)));
        fit.max_residual = std::max(fit.max_residual, resid);
    }
    return fit;
}

// ---------------------------------------------------------------------------
// Matrix configuration families and grid spectra.

struct ConfigFamily {
    int dim = 0;                          // n
    std::vector<Eigen::MatrixXd> matrices; // k of them, n x n

    ConfigFamily() = default;
    ConfigFamily(int n, std::vector<Eigen::MatrixXd> mats)
        : dim(n), matrices(std::move(mats)) {
        for (const auto& B : matrices)
            if (B.rows() != n || B.cols() != n)
                throw ContractError("ConfigFamily: matrices must be n x n");
        if (matrices.empty()) throw ContractError("ConfigFamily: k >= 1 required");
    }

    int k() const { return static_cast<int>(matrices.size()); }

    // kn x n row concatenation
    Eigen::MatrixXd stacked() const {
        Eigen::MatrixXd B(dim * k(), dim);
        for (int j = 0; j < k(); ++j) B.middleRows(j * dim, dim) = matrices[j];
        return B;
    }

    static ConfigFamily identity_ap(int dim = 1) {
        // k = 1, B = I: the form pairs xi with itself
        return ConfigFamily(dim, {Eigen::MatrixXd::Identity(dim, dim)});
    }
};

struct GridSpectrum {
    int dim = 0;
    double half_width = 0.0;
    int cells_per_axis = 0;
    std::vector<std::uint8_t> indicator; // row-major over cells_per_axis^dim

    GridSpectrum(int d, double L, int cells)
        : dim(d), half_width(L), cells_per_axis(cells),
          indicator(static_cast<std::size_t>(std::pow(cells, d)), 0) {
        if (d < 1 || d > 3) throw ContractError("GridSpectrum: dim in {1,2,3}");
        if (L <= 0 || cells < 1) throw ContractError("GridSpectrum: bad grid parameters");
    }

    double cell_size() const { return 2.0 * half_width / cells_per_axis; }
    double cell_volume() const { return std::pow(cell_size(), dim); }

    double center(int idx_axis) const {
        return -half_width + (idx_axis + 0.5) * cell_size();
    }

    // nearest-cell index for one coordinate; -1 when outside the grid
    int locate(double x) const {
        const double u = (x + half_width) / cell_size() - 0.5;
        const long i = std::lround(u);
        if (i < 0 || i >= cells_per_axis) return -1;
        return static_cast<int>(i);
    }

    std::size_t flat(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int a = 0; a < dim; ++a) f = f * cells_per_axis + static_cast<std::size_t>(idx[a]);
        return f;
    }

    template <typename F>
    void fill(F&& predicate) {
        std::vector<int> idx(dim, 0);
        std::vector<double> x(dim, 0.0);
        const std::size_t total = indicator.size();
        for (std::size_t f = 0; f < total; ++f) {
            std::size_t rem = f;
            for (int a = dim - 1; a >= 0; --a) {
                idx[a] = static_cast<int>(rem % cells_per_axis);
                rem /= cells_per_axis;
            }
            for (int a = 0; a < dim; ++a) x[a] = center(idx[a]);
            indicator[f] = predicate(x) ? 1 : 0;
        }
    }

    std::int64_t member_count() const {
        std::int64_t c = 0;
        for (auto v : indicator) c += v;
        return c;
    }
};

struct BConfigCount {
    std::int64_t count = 0;
    double measure_estimate = 0.0;
};

// count = #{cells xi : 1(xi) and for all i, 1(nearest cell to B_i xi)};
// cells whose image leaves the grid are non-members (conservative undercount).
inline BConfigCount count_b_configurations(const GridSpectrum& G, const ConfigFamily& fam) {
    if (fam.dim != G.dim)
        throw ContractError("count_b_configurations: dimension mismatch");
    BConfigCount out;
    std::vector<int> idx(G.dim, 0);
    Eigen::VectorXd xi(G.dim), img(G.dim);
    const std::size_t total = G.indicator.size();
    for (std::size_t f = 0; f < total; ++f) {
        if (!G.indicator[f]) continue;
        std::size_t rem = f;
        for (int a = G.dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(rem % G.cells_per_axis);
            rem /= G.cells_per_axis;
        }
        for (int a = 0; a < G.dim; ++a) xi[a] = G.center(idx[a]);
        bool all_in = true;
        for (const auto& B : fam.matrices) {
            img = B * xi;
            std::vector<int> tid(G.dim);
            for (int a = 0; a < G.dim && all_in; ++a) {
                tid[a] = G.locate(img[a]);
                if (tid[a] < 0) all_in = false;
            }
            if (!all_in || !G.indicator[G.flat(tid)]) {
                all_in = false;
                break;
            }
        }
        if (all_in) ++out.count;
    }
    out.measure_estimate = static_cast<double>(out.count) * G.cell_volume();
    return out;
}

} // namespace specdim
