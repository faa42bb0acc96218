#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace specdim {

// Trapezoid rule on the circle [0,1). Exact for trigonometric polynomials of
// degree < nodes (equispaced nodes alias only frequencies divisible by n).
template <typename F>
auto circle_trapezoid(F&& f, int nodes) -> decltype(f(0.0)) {
    if (nodes < 1) throw std::invalid_argument("circle_trapezoid: nodes >= 1");
    decltype(f(0.0)) acc{};
    for (int i = 0; i < nodes; ++i)
        acc += f(static_cast<double>(i) / nodes);
    return acc * (1.0 / nodes);
}

// Nodes and weights for Gauss-Hermite quadrature (weight e^{-x^2}),
// computed by Newton iteration on the recurrence. Deterministic.
struct GaussHermite {
    std::vector<double> x, w;

    explicit GaussHermite(int n) {
        x.resize(n);
        w.resize(n);
        const double pi4 = std::pow(3.14159265358979323846, -0.25);
        std::vector<double> root(n, 0.0); // descending positive-side roots
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z;
            if (i == 0)
                z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            else if (i == 1)
                z = root[0] - 1.14 * std::pow(static_cast<double>(n), 0.426) / root[0];
            else if (i == 2)
                z = 1.86 * root[1] - 0.86 * root[0];
            else if (i == 3)
                z = 1.91 * root[2] - 0.91 * root[1];
            else
                z = 2.0 * root[i - 1] - root[i - 2];
            double pp = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = pi4, p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
                         std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                double dz = p1 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            root[i] = z;
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
        }
    }
};

// Adaptive Simpson on [a,b] to absolute tolerance. Used where no exactness
// certificate applies (oracle-grade integrals live in the tests instead).
namespace detail {
template <typename F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

} // namespace specdim
