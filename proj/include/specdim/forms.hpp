// Counting multilinear forms in frequency- and time-side representations,
// the Fejer-mollified trilinear form, and the mollified-measure scaling
// experiment.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "specdim/configurations.hpp"
#include "specdim/errors.hpp"
#include "specdim/measures.hpp"
#include "specdim/quadrature.hpp"

namespace specdim {

// ---------------------------------------------------------------------------
// Trigonometric polynomials on [0,1).

struct TrigPolynomial {
    FourierTable coeff;
    bool real_valued = false;

    TrigPolynomial() = default;
    explicit TrigPolynomial(FourierTable c)
        : coeff(std::move(c)), real_valued(coeff.conjugate_symmetric(1e-12)) {}

    int degree() const {
        for (int m = coeff.window; m >= 0; --m)
            if (std::abs(coeff.at(m)) > 0.0 || std::abs(coeff.at(-m)) > 0.0) return m;
        return 0;
    }

    cplx_t eval(double x) const {
        cplx_t acc(0, 0);
        for (int m = -coeff.window; m <= coeff.window; ++m) {
            const cplx_t c = coeff.at(m);
            if (c == cplx_t(0, 0)) continue;
            const double ang = kTwoPi * m * x;
            acc += c * cplx_t(std::cos(ang), std::sin(ang));
        }
        return acc;
    }
};

// Lambda_*(f,g,h) = sum_{n,r} f^(n) g^(n+r) h^(n+2r); exact finite sum.
inline cplx_t trilinear_frequency(const TrigPolynomial& f, const TrigPolynomial& g,
                                  const TrigPolynomial& h) {
    cplx_t acc(0, 0);
    const int nf = f.coeff.window, ng = g.coeff.window, nh = h.coeff.window;
    for (int n = -nf; n <= nf; ++n) {
        const cplx_t fn = f.coeff.at(n);
        if (fn == cplx_t(0, 0)) continue;
        // r constrained by n + r in [-ng, ng] and n + 2r in [-nh, nh]
        for (int r = -(ng + n); r <= ng - n; ++r) {
            const int b = n + r, c = n + 2 * r;
            if (c < -nh || c > nh) continue;
            const cplx_t gb = g.coeff.at(b);
            if (gb == cplx_t(0, 0)) continue;
            const cplx_t hc = h.coeff.at(c);
            if (hc == cplx_t(0, 0)) continue;
            acc += fn * gb * hc;
        }
    }
    return acc;
}

// Time-side representation int_0^1 f(x) conj(g(-2x) h(x)) dx by the trapezoid
// rule, which is exact once the node count exceeds the top frequency
// deg f + 2 deg g + deg h of the integrand.
inline cplx_t trilinear_time(const TrigPolynomial& f, const TrigPolynomial& g,
                             const TrigPolynomial& h, int quadrature_order) {
    const int needed = f.degree() + 2 * g.degree() + h.degree() + 1;
    if (quadrature_order < needed)
        throw ContractError("trilinear_time: quadrature order below exactness bound");
    return circle_trapezoid(
        [&](double x) { return f.eval(x) * std::conj(g.eval(-2.0 * x) * h.eval(x)); },
        quadrature_order);
}

// ---------------------------------------------------------------------------
// Schwartz surrogates: centered Gaussians, optionally times one coordinate.
// Both the function and its transform have closed forms.

struct SchwartzSurrogate {
    int dim = 1;
    double width = 1.0;    // the t of g_t
    int monomial_axis = -1; // -1: plain Gaussian, else f(x) = x_j g_t(x)

    static SchwartzSurrogate gaussian_s(int dim, double t) {
        if (t <= 0) throw ContractError("SchwartzSurrogate: width > 0");
        SchwartzSurrogate s;
        s.dim = dim;
        s.width = t;
        return s;
    }
    static SchwartzSurrogate gaussian_times_coordinate(int dim, double t, int axis) {
        SchwartzSurrogate s = gaussian_s(dim, t);
        if (axis < 0 || axis >= dim) throw ContractError("SchwartzSurrogate: bad axis");
        s.monomial_axis = axis;
        return s;
    }

    double value(const Eigen::VectorXd& x) const {
        double n2 = x.squaredNorm();
        double g = std::pow(kTwoPi, -0.5 * dim) * std::pow(width, -dim) *
                   std::exp(-n2 / (2.0 * width * width));
        if (monomial_axis >= 0) g *= x[monomial_axis];
        return g;
    }

    cplx_t transform(const Eigen::VectorXd& xi) const {
        double e = std::exp(-2.0 * kPi * kPi * width * width * xi.squaredNorm());
        if (monomial_axis < 0) return cplx_t(e, 0.0);
        // transform of x_j g_t: -2 pi i t^2 xi_j ghat(xi)
        return cplx_t(0.0, -kTwoPi * width * width * xi[monomial_axis] * e);
    }
};

struct QuadratureGrid {
    int nodes_per_axis = 48;
};

struct FormValue {
    cplx_t value{0.0, 0.0};
    double error_estimate = 0.0;
};

namespace detail {

// Tensor Gauss-Hermite evaluation of int_{R^d} F(y) dy where F has Gaussian
// envelope exp(-|y|^2 / s^2) per axis after the caller's scaling s.
template <typename F>
cplx_t tensor_gauss_hermite(int d, int nodes, const std::vector<double>& scale, F&& f) {
    GaussHermite gh(nodes);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Eigen::VectorXd y(d);
    cplx_t acc(0, 0);
    while (true) {
        double wprod = 1.0, expsum = 0.0;
        for (int a = 0; a < d; ++a) {
            const double u = gh.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
            y[a] = u * scale[static_cast<std::size_t>(a)];
            wprod *= gh.w[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])] *
                     scale[static_cast<std::size_t>(a)];
            expsum += u * u;
        }
        acc += wprod * std::exp(expsum) * f(y);
        int a = 0;
        for (; a < d; ++a) {
            if (++idx[static_cast<std::size_t>(a)] < nodes) break;
            idx[static_cast<std::size_t>(a)] = 0;
        }
        if (a == d) break;
    }
    return acc;
}

} // namespace detail

// Frequency side: int ghat(xi) prod_j fhat_j(B_j xi) dxi over R^n.
inline FormValue multilinear_frequency(const SchwartzSurrogate& g,
                                       const std::vector<SchwartzSurrogate>& f_list,
                                       const ConfigFamily& fam,
                                       const QuadratureGrid& grid = {}) {
    const int n = g.dim;
    if (fam.dim != n) throw ContractError("multilinear_frequency: dimension mismatch");
    if (static_cast<int>(f_list.size()) != fam.k())
        throw ContractError("multilinear_frequency: need one f per matrix");
    for (const auto& f : f_list)
        if (f.dim != n) throw ContractError("multilinear_frequency: dimension mismatch");

    // Envelope exp(-2 pi^2 xi^T M xi) with M = t_g^2 I + sum t_j^2 B_j^T B_j.
    Eigen::MatrixXd M = g.width * g.width * Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < fam.k(); ++j)
        M += f_list[static_cast<std::size_t>(j)].width *
             f_list[static_cast<std::size_t>(j)].width *
             fam.matrices[static_cast<std::size_t>(j)].transpose() *
             fam.matrices[static_cast<std::size_t>(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const double lam_min = es.eigenvalues().minCoeff();
    const double s = 1.0 / (kPi * std::sqrt(2.0 * lam_min)); // xi = s u
    std::vector<double> scale(static_cast<std::size_t>(n), s);

    auto integrand = [&](const Eigen::VectorXd& xi) -> cplx_t {
        cplx_t v = g.transform(xi);
        for (int j = 0; j < fam.k(); ++j)
            v *= f_list[static_cast<std::size_t>(j)].transform(
                fam.matrices[static_cast<std::size_t>(j)] * xi);
        return v;
    };
    FormValue out;
    out.value = detail::tensor_gauss_hermite(n, grid.nodes_per_axis, scale, integrand);
    const cplx_t coarse =
        detail::tensor_gauss_hermite(n, std::max(8, grid.nodes_per_axis - 12), scale, integrand);
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

// Time side: int_{(R^n)^k} g(-B^T xvec) prod_j f_j(x_j) dx.
inline FormValue multilinear_time(const SchwartzSurrogate& g,
                                  const std::vector<SchwartzSurrogate>& f_list,
                                  const ConfigFamily& fam, const QuadratureGrid& grid = {}) {
    const int n = g.dim, k = fam.k();
    if (fam.dim != n) throw ContractError("multilinear_time: dimension mismatch");
    if (static_cast<int>(f_list.size()) != k)
        throw ContractError("multilinear_time: need one f per matrix");
    const int d = n * k;
    std::vector<double> scale(static_cast<std::size_t>(d));
    for (int j = 0; j < k; ++j)
        for (int a = 0; a < n; ++a)
            scale[static_cast<std::size_t>(j * n + a)] =
                std::sqrt(2.0) * f_list[static_cast<std::size_t>(j)].width;

    const Eigen::MatrixXd Bt = fam.stacked().transpose(); // n x nk
    auto integrand = [&](const Eigen::VectorXd& xvec) -> cplx_t {
        Eigen::VectorXd garg = -(Bt * xvec);
        double v = g.value(garg);
        for (int j = 0; j < k; ++j)
            v *= f_list[static_cast<std::size_t>(j)].value(xvec.segment(j * n, n));
        return cplx_t(v, 0.0);
    };
    FormValue out;
    out.value = detail::tensor_gauss_hermite(d, grid.nodes_per_axis, scale, integrand);
    const cplx_t coarse =
        detail::tensor_gauss_hermite(d, std::max(8, grid.nodes_per_axis - 12), scale, integrand);
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

// ---------------------------------------------------------------------------
// Fejer-mollified trilinear form of a measure table.

inline double fejer_form(const FourierTable& table, int order) {
    if (order < 1) throw ContractError("fejer_form: order >= 1 required");
    if (table.window < 2 * order)
        throw ContractError("fejer_form: table window must be >= 2*order");
    auto weighted = [&](int m) -> cplx_t {
        return table.at(m) * fejer_weight(order, m);
    };
    cplx_t acc(0, 0);
    for (int m = -order; m <= order; ++m) {
        const cplx_t fm = weighted(m);
        if (fm == cplx_t(0, 0)) continue;
        for (int r = -(order + m); r <= order - m; ++r) {
            const int b = m + r, c = m + 2 * r;
            if (c < -order || c > order) continue;
            acc += fm * weighted(b) * weighted(c);
        }
    }
    if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, std::abs(acc.real())))
        throw SymmetryError("fejer_form: non-real value; table is not conjugate-symmetric");
    return acc.real();
}

// ---------------------------------------------------------------------------
// Scaling experiment: Lambda(G_r; ...; G_r) against the predicted exponent
// alpha (k+1) - n for mollified measures with mu(B(0,r)) >= r^alpha.

struct ScalingReport {
    std::vector<double> radii;
    std::vector<double> lambda_values;
    double fitted_slope = 0.0;
    double predicted_exponent = 0.0;
    bool precondition_ok = true;
    std::vector<double> offending_radii;
    bool pass = false;
};

// 1-D only: the measure models live on [0,1) subset R.
inline ScalingReport scaling_experiment(const MeasureModel& mu, const ConfigFamily& fam,
                                        double alpha, const std::vector<double>& radii,
                                        double slope_tolerance = 0.1) {
    if (fam.dim != 1)
        throw ContractError("scaling_experiment: one-dimensional families only");
    if (radii.size() < 2) throw ContractError("scaling_experiment: need >= 2 radii");
    ScalingReport rep;
    rep.radii = radii;
    const int k = fam.k();
    rep.predicted_exponent = alpha * (k + 1) - 1.0;

    for (double r : radii)
        if (ball_mass(mu, 0.0, r) < std::pow(r, alpha) * (1.0 - 1e-9))
            rep.offending_radii.push_back(r);
    if (!rep.offending_radii.empty()) {
        rep.precondition_ok = false;
        return rep;
    }

    std::vector<double> b(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) b[static_cast<std::size_t>(j)] = fam.matrices[static_cast<std::size_t>(j)](0, 0);

    for (double r : radii) {
        // Lambda = int Ghat(xi) prod_j Ghat(b_j xi) dxi, Ghat = ghat_r * muhat
        double bmax = 1.0;
        for (double bj : b) bmax = std::max(bmax, std::abs(bj));
        const double L = 2.0 / r; // envelope exp(-4 pi^2 r^2 xi^2) and sharper
        const double h = 0.01;
        const long nsteps = static_cast<long>(L / h);
        cplx_t acc(0, 0);
        for (long i = -nsteps; i <= nsteps; ++i) {
            const double xi = static_cast<double>(i) * h;
            cplx_t v = gaussian_transform1(r, xi) * fourier_at(mu, xi);
            for (double bj : b) v *= gaussian_transform1(r, bj * xi) * fourier_at(mu, bj * xi);
            acc += v * ((i == -nsteps || i == nsteps) ? 0.5 : 1.0);
        }
        acc *= h;
        rep.lambda_values.push_back(acc.real());
    }

    // log-log slope
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (rep.lambda_values[i] <= 0.0)
            throw ContractError("scaling_experiment: nonpositive form value");
        pts.emplace_back(radii[i], rep.lambda_values[i]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [r, v] : pts) {
        double x = std::log(r), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    rep.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rep.pass = rep.fitted_slope <= rep.predicted_exponent + slope_tolerance;
    return rep;
}

} // namespace specdim
