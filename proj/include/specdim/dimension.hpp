// Local and global lower-dimension estimators from ball-mass oracles, and the
// bound formulas (2-beta)/3 and n/(k+1) with their consistency check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "specdim/configurations.hpp"
#include "specdim/errors.hpp"
#include "specdim/measures.hpp"

namespace specdim {

enum class DimensionMode { liminf_proxy, limsup_proxy, slope };

struct DimensionEstimate {
    double value = 0.0;
    double r_min = 0.0, r_max = 0.0;
    double fit_residual = 0.0;
    DimensionMode mode = DimensionMode::liminf_proxy;
};

inline std::vector<double> geometric_radii(double r0, double ratio, int count) {
    if (!(ratio > 0.0 && ratio < 1.0) || r0 <= 0 || count < 1)
        throw ContractError("geometric_radii: bad parameters");
    std::vector<double> r(static_cast<std::size_t>(count));
    double v = r0;
    for (int i = 0; i < count; ++i, v *= ratio) r[static_cast<std::size_t>(i)] = v;
    return r;
}

// The liminf proxy is the minimum of consecutive two-point slopes of
// log mass vs log r over the finest half of the ladder; limsup is the max,
// slope the least-squares fit on the same points.
inline DimensionEstimate local_dimension(const MeasureModel& mu, double x,
                                         const std::vector<double>& radii,
                                         DimensionMode mode = DimensionMode::liminf_proxy) {
    if (radii.size() < 8)
        throw ContractError("local_dimension: need at least 8 radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] < radii[i - 1]))
            throw ContractError("local_dimension: radii must decrease");
    if (ball_mass(mu, x, radii.front()) <= 0.0)
        throw NotInSupportError("local_dimension: zero mass at largest radius");

    const std::size_t start = radii.size() / 2; // finest half
    std::vector<double> lr, lm;
    for (std::size_t i = start > 0 ? start - 1 : 0; i < radii.size(); ++i) {
        const double m = ball_mass(mu, x, radii[i]);
        if (m <= 0.0)
            throw NotInSupportError("local_dimension: zero mass inside the ladder");
        lr.push_back(std::log(radii[i]));
        lm.push_back(std::log(m));
    }

    DimensionEstimate est;
    est.mode = mode;
    est.r_min = radii.back();
    est.r_max = radii.front();

    std::vector<double> slopes;
    for (std::size_t i = 1; i < lr.size(); ++i)
        slopes.push_back((lm[i] - lm[i - 1]) / (lr[i] - lr[i - 1]));

    double v = 0.0;
    if (mode == DimensionMode::liminf_proxy)
        v = *std::min_element(slopes.begin(), slopes.end());
    else if (mode == DimensionMode::limsup_proxy)
        v = *std::max_element(slopes.begin(), slopes.end());
    else {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(lr.size());
        for (std::size_t i = 0; i < lr.size(); ++i) {
            sx += lr[i];
            sy += lm[i];
            sxx += lr[i] * lr[i];
            sxy += lr[i] * lm[i];
        }
        v = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double b = (sy - v * sx) / n;
        for (std::size_t i = 0; i < lr.size(); ++i)
            est.fit_residual = std::max(est.fit_residual, std::abs(lm[i] - (b + v * lr[i])));
    }
    est.value = std::clamp(v, 0.0, 1.25); // ambient dimension 1 plus fit slack
    return est;
}

// dim_H(mu) estimated as a low quantile of local liminf proxies over
// mu-distributed samples (robust stand-in for "mu-almost every x").
inline DimensionEstimate measure_dimension(const MeasureModel& mu, int sample_count,
                                           std::uint64_t seed,
                                           const std::vector<double>& radii,
                                           double quantile = 0.05) {
    if (sample_count < 1) throw ContractError("measure_dimension: sample_count >= 1");
    if (!mu.supports_sampling())
        throw UnsupportedModelError("measure_dimension: model lacks a sampler");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        const double x = sample_point(mu, seed, static_cast<std::uint64_t>(i));
        values.push_back(local_dimension(mu, x, radii, DimensionMode::liminf_proxy).value);
    }
    std::sort(values.begin(), values.end());
    const std::size_t idx = static_cast<std::size_t>(
        std::min<double>(values.size() - 1.0, std::floor(quantile * static_cast<double>(values.size()))));
    DimensionEstimate est;
    est.value = values[idx];
    est.r_min = radii.back();
    est.r_max = radii.front();
    est.mode = DimensionMode::liminf_proxy;
    return est;
}

inline double corollary_bound(double beta) {
    if (beta < 0.0 || beta > 2.0)
        throw ContractError("corollary_bound: beta must lie in [0,2]");
    return (2.0 - beta) / 3.0;
}

inline double theorem_bound(int n, int k) {
    if (n < 1 || k < 1) throw ContractError("theorem_bound: n, k >= 1 required");
    return static_cast<double>(n) / (k + 1.0);
}

// ---------------------------------------------------------------------------
// Corollary consistency: d_hat + tol >= (2 - beta_hat) / 3.

struct CorollaryReport {
    std::vector<std::pair<double, double>> counts; // (n, t_n)
    double beta_hat = 0.0;
    double d_hat = 0.0;
    double bound = 0.0;
    double tolerance = 0.1;
    bool pass = false;
};

inline CorollaryReport certify_corollary(const MeasureModel& mu,
                                         const std::vector<int>& windows, double tau,
                                         int sample_count, std::uint64_t seed,
                                         const std::vector<double>& radii,
                                         double tolerance = 0.1) {
    CorollaryReport rep;
    rep.tolerance = tolerance;
    for (int n : windows) {
        const FourierTable table = fourier_coefficients(mu, n);
        const SpectrumWindow S = extract_spectrum(table, tau);
        const std::int64_t t = count_triples_fft(S);
        rep.counts.emplace_back(static_cast<double>(n), static_cast<double>(t));
    }
    rep.beta_hat = growth_exponent(rep.counts).beta;
    rep.d_hat = measure_dimension(mu, sample_count, seed, radii).value;
    rep.bound = corollary_bound(std::clamp(rep.beta_hat, 0.0, 2.0));
    rep.pass = rep.d_hat + tolerance >= rep.bound;
    return rep;
}

} // namespace specdim
