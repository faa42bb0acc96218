// Singular measures on [0,1) given by exact oracles: Fourier coefficients,
// ball masses, and sampling. Also the Gaussian/Fejer kernels and
// frequency-side mollification.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "specdim/errors.hpp"
#include "specdim/rng.hpp"

namespace specdim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

using cplx_t = std::complex<double>;

// ---------------------------------------------------------------------------
// Fourier tables under the convention c(m) = \int_0^1 e^{-2pi i m x} dmu(x).

struct FourierTable {
    int window = 0;                  // coefficients for m in [-window, window]
    std::vector<cplx_t> coeff;       // index m + window

    FourierTable() = default;
    explicit FourierTable(int n) : window(n), coeff(2 * n + 1, cplx_t(0, 0)) {
        if (n < 0) throw ContractError("FourierTable: window must be >= 0");
    }

    cplx_t at(int m) const {
        if (m < -window || m > window) return cplx_t(0, 0);
        return coeff[static_cast<std::size_t>(m + window)];
    }
    void set(int m, cplx_t v) {
        if (m < -window || m > window)
            throw ContractError("FourierTable::set: index outside window");
        coeff[static_cast<std::size_t>(m + window)] = v;
    }

    bool conjugate_symmetric(double tol = 1e-12) const {
        for (int m = 0; m <= window; ++m)
            if (std::abs(at(-m) - std::conj(at(m))) > tol) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// Kernels.

struct KernelSpec {
    enum class Kind { gaussian, fejer };
    Kind kind = Kind::gaussian;
    double width = 1.0;   // gaussian t
    int order = 1;        // fejer n
    int ambient_dim = 1;

    static KernelSpec gaussian_kernel(double t, int dim = 1) {
        if (t <= 0) throw ContractError("gaussian kernel: t > 0 required");
        KernelSpec k;
        k.kind = Kind::gaussian;
        k.width = t;
        k.ambient_dim = dim;
        return k;
    }
    static KernelSpec fejer_kernel(int n) {
        if (n < 0) throw ContractError("fejer kernel: order >= 0 required");
        KernelSpec k;
        k.kind = Kind::fejer;
        k.order = n;
        k.ambient_dim = 1;
        return k;
    }
};

// g_t(x) = (2pi)^{-n/2} t^{-n} exp(-|x|^2 / (2 t^2)); integrates to 1.
inline double gaussian(double t, int dim, const std::vector<double>& x) {
    if (t <= 0) throw ContractError("gaussian: t > 0 required");
    if (static_cast<int>(x.size()) != dim)
        throw ContractError("gaussian: point dimension mismatch");
    double n2 = 0.0;
    for (double xi : x) n2 += xi * xi;
    return std::pow(kTwoPi, -0.5 * dim) * std::pow(t, -dim) * std::exp(-n2 / (2.0 * t * t));
}

inline double gaussian1(double t, double x) { return gaussian(t, 1, {x}); }

// Transform of g_t: exp(-2 pi^2 t^2 |xi|^2); equals 1 at xi = 0.
inline double gaussian_transform(double t, int dim, const std::vector<double>& xi) {
    if (t <= 0) throw ContractError("gaussian_transform: t > 0 required");
    if (static_cast<int>(xi.size()) != dim)
        throw ContractError("gaussian_transform: point dimension mismatch");
    double n2 = 0.0;
    for (double v : xi) n2 += v * v;
    return std::exp(-2.0 * kPi * kPi * t * t * n2);
}

inline double gaussian_transform1(double t, double xi) {
    return gaussian_transform(t, 1, {xi});
}

// Fejer weight 1 - |k|/(n+1), clipped to zero outside [-n, n].
inline double fejer_weight(int order, int k) {
    double w = 1.0 - std::abs(k) / (order + 1.0);
    return w > 0.0 ? w : 0.0;
}

// Coefficientwise mollification; output support is contained in the input's.
inline FourierTable mollify(const FourierTable& table, const KernelSpec& kernel) {
    if (kernel.kind == KernelSpec::Kind::gaussian && kernel.ambient_dim != 1)
        throw ContractError("mollify: tables are one-dimensional");
    FourierTable out(table.window);
    for (int m = -table.window; m <= table.window; ++m) {
        double w = kernel.kind == KernelSpec::Kind::gaussian
                       ? gaussian_transform1(kernel.width, static_cast<double>(m))
                       : fejer_weight(kernel.order, m);
        out.set(m, table.at(m) * w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Measure models.

struct MeasureModel {
    enum class Kind { lebesgue, atom, self_similar, riesz };
    Kind kind = Kind::lebesgue;

    // atom
    double atom_location = 0.0;

    // self-similar: maps S_i(x) = ratio * x + translations[i] with weights[i]
    double ratio = 0.0;
    std::vector<double> translations;
    std::vector<double> weights;

    // Riesz product over prod (1 + a_k cos(2 pi lambda_k x))
    std::vector<std::int64_t> frequencies;
    std::vector<double> amplitudes;
    int truncation_depth = 0;

    // signed-sum expansion of the truncated Riesz product (m, coefficient)
    std::vector<std::pair<std::int64_t, double>> riesz_terms;
    std::unordered_map<std::int64_t, double> riesz_lookup;

    std::string name() const {
        switch (kind) {
            case Kind::lebesgue: return "lebesgue";
            case Kind::atom: return "atom";
            case Kind::self_similar: return "self_similar";
            case Kind::riesz: return "riesz";
        }
        return "?";
    }

    static MeasureModel lebesgue() { return MeasureModel{}; }

    static MeasureModel atom(double location) {
        MeasureModel m;
        m.kind = Kind::atom;
        m.atom_location = location;
        return m;
    }

    static MeasureModel self_similar(double ratio, std::vector<double> translations,
                                     std::vector<double> weights) {
        if (!(ratio > 0.0 && ratio < 1.0))
            throw ContractError("self_similar: ratio must lie in (0,1)");
        if (translations.size() != weights.size())
            throw ContractError("self_similar: |translations| != |weights|");
        if (translations.size() < 2)
            throw ContractError("self_similar: need at least two maps (one map is an atom; "
                                "use the atom model)");
        double ws = 0.0;
        for (double w : weights) {
            if (w <= 0.0) throw ContractError("self_similar: weights must be positive");
            ws += w;
        }
        if (std::abs(ws - 1.0) > 1e-12)
            throw ContractError("self_similar: weights must sum to 1");
        for (double t : translations)
            if (t < 0.0 || t + ratio > 1.0 + 1e-12)
                throw ContractError("self_similar: map image escapes [0,1)");
        MeasureModel m;
        m.kind = Kind::self_similar;
        m.ratio = ratio;
        m.translations = std::move(translations);
        m.weights = std::move(weights);
        return m;
    }

    static MeasureModel middle_thirds_cantor() {
        return self_similar(1.0 / 3.0, {0.0, 2.0 / 3.0}, {0.5, 0.5});
    }

    static MeasureModel riesz(std::vector<std::int64_t> frequencies,
                              std::vector<double> amplitudes, int truncation_depth = -1) {
        if (frequencies.empty() || frequencies.size() != amplitudes.size())
            throw ContractError("riesz: frequencies/amplitudes size mismatch");
        for (std::size_t k = 0; k < frequencies.size(); ++k) {
            if (frequencies[k] <= 0)
                throw ContractError("riesz: frequencies must be positive");
            if (k > 0 && 3 * frequencies[k - 1] > frequencies[k])
                throw ContractError("riesz: frequencies must be lacunary with ratio >= 3");
            if (std::abs(amplitudes[k]) > 1.0)
                throw ContractError("riesz: amplitudes must lie in [-1,1]");
        }
        MeasureModel m;
        m.kind = Kind::riesz;
        if (truncation_depth < 0) truncation_depth = static_cast<int>(frequencies.size());
        if (truncation_depth < 1 || truncation_depth > static_cast<int>(frequencies.size()))
            throw ContractError("riesz: truncation_depth out of range");
        m.truncation_depth = truncation_depth;
        m.frequencies = std::move(frequencies);
        m.amplitudes = std::move(amplitudes);
        m.build_riesz_terms();
        return m;
    }

    void build_riesz_terms() {
        riesz_terms.assign(1, {0, 1.0});
        for (int k = 0; k < truncation_depth; ++k) {
            std::vector<std::pair<std::int64_t, double>> next;
            next.reserve(riesz_terms.size() * 3);
            const double half = amplitudes[static_cast<std::size_t>(k)] / 2.0;
            const std::int64_t f = frequencies[static_cast<std::size_t>(k)];
            for (const auto& [m, c] : riesz_terms) {
                next.emplace_back(m, c);
                if (half != 0.0) {
                    next.emplace_back(m + f, c * half);
                    next.emplace_back(m - f, c * half);
                }
            }
            riesz_terms = std::move(next);
        }
        std::sort(riesz_terms.begin(), riesz_terms.end());
        riesz_lookup.clear();
        riesz_lookup.reserve(riesz_terms.size());
        for (const auto& [m, c] : riesz_terms) riesz_lookup[m] += c;
    }

    bool supports_sampling() const { return true; }
};

// ---------------------------------------------------------------------------
// Fourier coefficient oracles.

namespace detail {

// Infinite product for a self-similar measure at real frequency xi.
// Factors Phi(u) = sum_i w_i e^{-2 pi i u t_i}; truncated once |ratio^k xi|
// drops below eps (remaining factors differ from 1 by O(eps)).
inline cplx_t self_similar_transform(const MeasureModel& m, double xi,
                                     double eps = 1e-14, int max_depth = 4096) {
    cplx_t prod(1.0, 0.0);
    double u = xi;
    int depth = 0;
    while (std::abs(u) >= eps) {
        if (++depth > max_depth)
            throw TruncationError("self_similar transform: product truncation epsilon "
                                  "unreachable within max depth");
        cplx_t phi(0.0, 0.0);
        for (std::size_t i = 0; i < m.translations.size(); ++i) {
            double ang = -kTwoPi * u * m.translations[i];
            phi += m.weights[i] * cplx_t(std::cos(ang), std::sin(ang));
        }
        prod *= phi;
        u *= m.ratio;
    }
    return prod;
}

} // namespace detail

// Fourier-Stieltjes transform at a real frequency (needed by the scaling
// experiment, where the measure is mollified on the line).
inline cplx_t fourier_at(const MeasureModel& m, double xi) {
    switch (m.kind) {
        case MeasureModel::Kind::lebesgue: {
            if (xi == 0.0) return cplx_t(1.0, 0.0);
            // int_0^1 e^{-2 pi i xi x} dx
            double a = -kTwoPi * xi;
            return cplx_t(std::sin(-a) / (-a), (std::cos(-a) - 1.0) / (-a));
        }
        case MeasureModel::Kind::atom: {
            double ang = -kTwoPi * xi * m.atom_location;
            return cplx_t(std::cos(ang), std::sin(ang));
        }
        case MeasureModel::Kind::self_similar:
            return detail::self_similar_transform(m, xi);
        case MeasureModel::Kind::riesz: {
            // transform of the truncated density restricted to [0,1]
            cplx_t acc(0.0, 0.0);
            for (const auto& [f, c] : m.riesz_terms) {
                double d = static_cast<double>(f) - xi;
                if (std::abs(d) < 1e-12) {
                    acc += c;
                } else {
                    double a = kTwoPi * d; // int_0^1 e^{2 pi i d x} dx
                    acc += c * cplx_t(std::sin(a) / a, (1.0 - std::cos(a)) / a);
                }
            }
            return acc;
        }
    }
    throw ContractError("fourier_at: unknown model");
}

inline cplx_t fourier_coefficient(const MeasureModel& m, std::int64_t freq) {
    switch (m.kind) {
        case MeasureModel::Kind::lebesgue:
            return freq == 0 ? cplx_t(1.0, 0.0) : cplx_t(0.0, 0.0);
        case MeasureModel::Kind::atom: {
            double ang = -kTwoPi * static_cast<double>(freq) * m.atom_location;
            return cplx_t(std::cos(ang), std::sin(ang));
        }
        case MeasureModel::Kind::self_similar:
            return detail::self_similar_transform(m, static_cast<double>(freq));
        case MeasureModel::Kind::riesz: {
            auto it = m.riesz_lookup.find(freq);
            return it == m.riesz_lookup.end() ? cplx_t(0.0, 0.0) : cplx_t(it->second, 0.0);
        }
    }
    throw ContractError("fourier_coefficient: unknown model");
}

inline FourierTable fourier_coefficients(const MeasureModel& m, int window) {
    if (window < 1) throw ContractError("fourier_coefficients: window >= 1 required");
    FourierTable t(window);
    for (int k = -window; k <= window; ++k) t.set(k, fourier_coefficient(m, k));
    return t;
}

// ---------------------------------------------------------------------------
// Ball masses mu(B(x,r)) for balls of the real line (no wrap-around).

namespace detail {

struct SelfSimilarMassWorker {
    const MeasureModel& m;
    double abs_tol;
    long node_budget;

    double run(double lo, double hi, double mass) {
        if (--node_budget < 0)
            throw ResolutionError("ball_mass: cylinder recursion budget exhausted "
                                  "(overlapping maps at this radius?)");
        if (hi <= 0.0 || lo >= 1.0) return 0.0;
        if (lo <= 0.0 && hi >= 1.0) return mass;
        if (mass <= abs_tol) return 0.5 * mass; // bracket midpoint; error <= mass/2
        double acc = 0.0;
        for (std::size_t i = 0; i < m.translations.size(); ++i)
            acc += run((lo - m.translations[i]) / m.ratio,
                       (hi - m.translations[i]) / m.ratio, mass * m.weights[i]);
        return acc;
    }
};

// Exact integral of the truncated Riesz density over [a,b] subset [0,1].
inline double riesz_mass_exact(const MeasureModel& m, double a, double b) {
    double acc = 0.0;
    for (const auto& [f, c] : m.riesz_terms) {
        if (f == 0) {
            acc += c * (b - a);
        } else {
            double w = kTwoPi * static_cast<double>(f);
            acc += c * (std::sin(w * b) - std::sin(w * a)) / w;
        }
    }
    return acc;
}

} // namespace detail

inline double ball_mass(const MeasureModel& m, double x, double r) {
    if (r <= 0.0) throw ContractError("ball_mass: radius must be positive");
    switch (m.kind) {
        case MeasureModel::Kind::lebesgue: {
            double lo = std::max(0.0, x - r), hi = std::min(1.0, x + r);
            return hi > lo ? hi - lo : 0.0;
        }
        case MeasureModel::Kind::atom:
            return std::abs(x - m.atom_location) <= r ? 1.0 : 0.0;
        case MeasureModel::Kind::self_similar: {
            if (r < 1e-300) throw ResolutionError("ball_mass: radius below resolution");
            detail::SelfSimilarMassWorker w{m, 1e-18, 4'000'000};
            return w.run(x - r, x + r, 1.0);
        }
        case MeasureModel::Kind::riesz: {
            const std::int64_t top =
                m.frequencies[static_cast<std::size_t>(m.truncation_depth - 1)];
            if (10.0 > r * static_cast<double>(top))
                throw ResolutionError("ball_mass: radius too small for the truncation depth "
                                      "(need 1/lambda_K < r/10)");
            double a = std::max(0.0, x - r), b = std::min(1.0, x + r);
            if (b <= a) return 0.0;
            return detail::riesz_mass_exact(m, a, b);
        }
    }
    throw ContractError("ball_mass: unknown model");
}

// ---------------------------------------------------------------------------
// mu-distributed sampling, reproducible via counter RNG keyed by sample index.

inline double sample_point(const MeasureModel& m, std::uint64_t seed, std::uint64_t index) {
    Rng rng = Rng::keyed(seed, index);
    switch (m.kind) {
        case MeasureModel::Kind::lebesgue:
            return rng.next_double();
        case MeasureModel::Kind::atom:
            return m.atom_location;
        case MeasureModel::Kind::self_similar: {
            // x = sum_k ratio^k t_{i_k}; digits drawn by weight.
            double x = 0.0, scale = 1.0;
            while (scale > 1e-17) {
                double u = rng.next_double(), acc = 0.0;
                std::size_t pick = m.weights.size() - 1;
                for (std::size_t i = 0; i < m.weights.size(); ++i) {
                    acc += m.weights[i];
                    if (u < acc) {
                        pick = i;
                        break;
                    }
                }
                x += scale * m.translations[pick];
                scale *= m.ratio;
            }
            return x;
        }
        case MeasureModel::Kind::riesz: {
            // rejection from the truncated density; bound prod(1 + |a_k|)
            double bound = 1.0;
            for (int k = 0; k < m.truncation_depth; ++k)
                bound *= 1.0 + std::abs(m.amplitudes[static_cast<std::size_t>(k)]);
            for (int attempt = 0; attempt < 1'000'000; ++attempt) {
                double x = rng.next_double();
                double u = rng.next_double() * bound;
                double f = 1.0;
                for (int k = 0; k < m.truncation_depth; ++k)
                    f *= 1.0 + m.amplitudes[static_cast<std::size_t>(k)] *
                                   std::cos(kTwoPi * static_cast<double>(
                                                         m.frequencies[static_cast<std::size_t>(k)]) *
                                            x);
                if (u < f) return x;
            }
            throw UnsupportedModelError("sample_point: rejection sampler failed to accept");
        }
    }
    throw UnsupportedModelError("sample_point: unknown model");
}

} // namespace specdim
