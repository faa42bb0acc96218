// Dense-map multivariate polynomials with integer exponents. Sized for the
// small symbolic objects in this project (operator symbols, homogenization,
// toy Q/P products); the big shipped construction evaluates in factored form.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace specdim {

// Exponent multi-index over a fixed number of variables (<= 4 used here).
using MultiIndex = std::vector<int>;

struct Polynomial {
    int nvars = 0;
    std::map<MultiIndex, double> terms; // multi-index -> coefficient

    Polynomial() = default;
    explicit Polynomial(int n) : nvars(n) {}

    static Polynomial constant(int nvars, double c) {
        Polynomial p(nvars);
        if (c != 0.0) p.terms[MultiIndex(nvars, 0)] = c;
        return p;
    }
    static Polynomial variable(int nvars, int i, int power = 1) {
        Polynomial p(nvars);
        MultiIndex m(nvars, 0);
        m[i] = power;
        p.terms[m] = 1.0;
        return p;
    }

    void add_term(const MultiIndex& m, double c) {
        if (static_cast<int>(m.size()) != nvars)
            throw std::invalid_argument("Polynomial: multi-index arity mismatch");
        double& slot = terms[m];
        slot += c;
        if (slot == 0.0) terms.erase(m);
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms) {
            int s = 0;
            for (int e : m) s += e;
            if (s > d) d = s;
        }
        return d; // -1 for the zero polynomial
    }

    bool is_homogeneous(int* degree_out = nullptr) const {
        int d = -1;
        for (const auto& [m, c] : terms) {
            int s = 0;
            for (int e : m) s += e;
            if (d < 0) d = s;
            else if (s != d) return false;
        }
        if (degree_out) *degree_out = d;
        return true;
    }

    // Even iff every monomial has even total degree.
    bool is_even(double tol = 1e-14) const {
        for (const auto& [m, c] : terms) {
            int s = 0;
            for (int e : m) s += e;
            if (s % 2 != 0 && std::abs(c) > tol) return false;
        }
        return true;
    }

    double eval(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != nvars)
            throw std::invalid_argument("Polynomial::eval: arity mismatch");
        double acc = 0.0;
        for (const auto& [m, c] : terms) {
            double t = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < m[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms) r.add_term(m, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms) r.add_term(m, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r(nvars);
        for (const auto& [ma, ca] : terms)
            for (const auto& [mb, cb] : o.terms) {
                MultiIndex m(nvars);
                for (int i = 0; i < nvars; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Polynomial operator*(double s) const {
        Polynomial r(nvars);
        if (s == 0.0) return r;
        r = *this;
        for (auto& [m, c] : r.terms) c *= s;
        return r;
    }
};

// Homogeneous part of given total degree.
inline Polynomial homogeneous_part(const Polynomial& p, int degree) {
    Polynomial r(p.nvars);
    for (const auto& [m, c] : p.terms) {
        int s = 0;
        for (int e : m) s += e;
        if (s == degree) r.terms[m] = c;
    }
    return r;
}

// Homogenize an even polynomial F: returns F~ = sum_j F_{2j} * (|x|^2)^{M-j},
// homogeneous of degree 2M, equal to F on the unit sphere.
inline Polynomial homogenize_even(const Polynomial& p, double tol = 1e-14) {
    if (!p.is_even(tol))
        throw std::invalid_argument("homogenize_even: polynomial has odd-degree terms");
    const int d = p.total_degree();
    if (d < 0) return Polynomial(p.nvars); // zero polynomial
    const int M = d / 2;
    Polynomial norm2(p.nvars);
    for (int i = 0; i < p.nvars; ++i) {
        MultiIndex m(p.nvars, 0);
        m[i] = 2;
        norm2.add_term(m, 1.0);
    }
    Polynomial result(p.nvars);
    for (int j = 0; j <= M; ++j) {
        Polynomial part = homogeneous_part(p, 2 * j);
        if (part.terms.empty()) continue;
        Polynomial factor = Polynomial::constant(p.nvars, 1.0);
        for (int k = 0; k < M - j; ++k) factor = factor * norm2;
        result = result + part * factor;
    }
    return result;
}

} // namespace specdim
