#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "specdim/forms.hpp"
#include "specdim/measures.hpp"
#include "specdim/rng.hpp"

using namespace specdim;

namespace {

TrigPolynomial random_real_poly(int degree, Rng& rng) {
    FourierTable t(degree);
    t.set(0, cplx_t(rng.uniform(-1, 1), 0.0));
    for (int m = 1; m <= degree; ++m) {
        cplx_t c(rng.uniform(-1, 1), rng.uniform(-1, 1));
        t.set(m, c);
        t.set(-m, std::conj(c));
    }
    return TrigPolynomial(std::move(t));
}

TrigPolynomial monomial(int freq, cplx_t c = cplx_t(1, 0)) {
    FourierTable t(std::abs(freq));
    t.set(freq, c);
    return TrigPolynomial(std::move(t));
}

TrigPolynomial cosine(int freq) {
    FourierTable t(freq);
    t.set(freq, cplx_t(0.5, 0));
    t.set(-freq, cplx_t(0.5, 0));
    return TrigPolynomial(std::move(t));
}

// closed-form oracle: int_{R^n} exp(-2 pi^2 T |xi|^2) dxi = (2 pi T)^{-n/2}
double gaussian_form_oracle(double T, int n) {
    return std::pow(2.0 * kPi * T, -0.5 * n);
}

} // namespace

TEST_CASE("trilinear form on constants and cosines", "[forms]") {
    auto one = monomial(0);
    REQUIRE(std::abs(trilinear_frequency(one, one, one) - cplx_t(1, 0)) < 1e-15);
    REQUIRE(std::abs(trilinear_time(one, one, one, 4) - cplx_t(1, 0)) < 1e-15);

    auto cos1 = cosine(1);
    REQUIRE(trilinear_frequency(cos1, cos1, cos1).real() == Catch::Approx(0.25));
    REQUIRE(trilinear_time(cos1, cos1, cos1, 16).real() == Catch::Approx(0.25));
}

TEST_CASE("complex counterexample: realness is required", "[forms]") {
    auto e1 = monomial(1); // e^{2 pi i x}
    REQUIRE(std::abs(trilinear_frequency(e1, e1, e1) - cplx_t(1, 0)) < 1e-15);
    REQUIRE(std::abs(trilinear_time(e1, e1, e1, 16)) < 1e-12);
}

TEST_CASE("trilinear duality for random real polynomials", "[forms][property]") {
    Rng rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const int deg = 1 + static_cast<int>(rng.next_below(64));
        auto f = random_real_poly(deg, rng);
        auto g = random_real_poly(deg, rng);
        auto h = random_real_poly(deg, rng);
        const cplx_t lhs = trilinear_frequency(f, g, h);
        const cplx_t rhs = trilinear_time(f, g, h, 4 * deg + 1);
        REQUIRE(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("trilinear form is linear in each slot", "[forms][property]") {
    Rng rng(7);
    auto f1 = random_real_poly(8, rng), f2 = random_real_poly(8, rng);
    auto g = random_real_poly(8, rng), h = random_real_poly(8, rng);
    const double a = 1.7, b = -0.4;
    FourierTable combo(8);
    for (int m = -8; m <= 8; ++m) combo.set(m, a * f1.coeff.at(m) + b * f2.coeff.at(m));
    const cplx_t lhs = trilinear_frequency(TrigPolynomial(combo), g, h);
    const cplx_t rhs = a * trilinear_frequency(f1, g, h) + b * trilinear_frequency(f2, g, h);
    REQUIRE(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("multilinear forms: both sides equal 1/(2 sqrt pi)", "[forms][oracle]") {
    auto g = SchwartzSurrogate::gaussian_s(1, 1.0);
    ConfigFamily fam(1, {Eigen::MatrixXd::Identity(1, 1)});
    const double oracle = gaussian_form_oracle(2.0, 1); // T = 1 + 1
    REQUIRE(oracle == Catch::Approx(0.28209479177387814).epsilon(1e-12));
    auto freq = multilinear_frequency(g, {g}, fam);
    auto time = multilinear_time(g, {g}, fam);
    REQUIRE(freq.value.real() == Catch::Approx(oracle).margin(1e-8));
    REQUIRE(time.value.real() == Catch::Approx(oracle).margin(1e-8));
    REQUIRE(std::abs(freq.value.imag()) < 1e-12);
}

TEST_CASE("multilinear form with the zero matrix separates", "[forms][oracle]") {
    auto g = SchwartzSurrogate::gaussian_s(1, 1.0);
    ConfigFamily zero(1, {Eigen::MatrixXd::Zero(1, 1)});
    // fhat(0) * int ghat = 1 * (2 pi)^{-1/2}
    auto freq = multilinear_frequency(g, {g}, zero);
    REQUIRE(freq.value.real() == Catch::Approx(gaussian_form_oracle(1.0, 1)).margin(1e-8));
    // with a coordinate-monomial factor the transform vanishes at zero
    auto fx = SchwartzSurrogate::gaussian_times_coordinate(1, 1.0, 0);
    REQUIRE(std::abs(multilinear_frequency(g, {fx}, zero).value) < 1e-10);
}

TEST_CASE("orthogonal families are rotation invariant", "[forms][property]") {
    Rng rng(555);
    for (int trial = 0; trial < 10; ++trial) {
        const double tg = rng.uniform(0.6, 1.6), tf = rng.uniform(0.6, 1.6);
        const double th = rng.uniform(0, 2 * kPi);
        Eigen::MatrixXd rot(2, 2);
        rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        auto g = SchwartzSurrogate::gaussian_s(2, tg);
        auto f = SchwartzSurrogate::gaussian_s(2, tf);
        ConfigFamily fam(2, {rot});
        const double oracle = gaussian_form_oracle(tg * tg + tf * tf, 2);
        auto freq = multilinear_frequency(g, {f}, fam, QuadratureGrid{40});
        REQUIRE(freq.value.real() == Catch::Approx(oracle).margin(1e-8));
        auto time = multilinear_time(g, {f}, fam, QuadratureGrid{40});
        REQUIRE(time.value.real() ==
                Catch::Approx(oracle).margin(1e-7 + freq.error_estimate + time.error_estimate));
    }
}

TEST_CASE("monomial surrogate transform matches quadrature", "[forms][oracle]") {
    auto fx = SchwartzSurrogate::gaussian_times_coordinate(1, 0.8, 0);
    for (double xi : {0.0, 0.3, 1.1}) {
        // direct quadrature of int x g(x) e^{-2 pi i x xi} dx
        cplx_t acc(0, 0);
        const double h = 1e-3;
        for (double x = -10; x <= 10; x += h) {
            Eigen::VectorXd p(1);
            p[0] = x;
            const double ang = -kTwoPi * x * xi;
            acc += fx.value(p) * cplx_t(std::cos(ang), std::sin(ang)) * h;
        }
        Eigen::VectorXd q(1);
        q[0] = xi;
        REQUIRE(std::abs(acc - fx.transform(q)) < 1e-7);
    }
}

TEST_CASE("fejer form of measure tables", "[forms]") {
    auto leb = fourier_coefficients(MeasureModel::lebesgue(), 8);
    REQUIRE(fejer_form(leb, 4) == Catch::Approx(1.0));

    auto dirac = fourier_coefficients(MeasureModel::atom(0.0), 2);
    REQUIRE(fejer_form(dirac, 1) == Catch::Approx(1.75));

    // bound by the triple count of the exact spectrum at doubled window
    auto riesz = MeasureModel::riesz({4, 16, 64}, {1.0, 1.0, 1.0});
    auto table = fourier_coefficients(riesz, 200);
    const double val = fejer_form(table, 100);
    auto S = extract_spectrum(table, 0.0);
    REQUIRE(val <= static_cast<double>(count_triples_brute(S)) + 1e-9);

    auto cantor = fourier_coefficients(MeasureModel::middle_thirds_cantor(), 64);
    const double cval = fejer_form(cantor, 32);
    auto CS = extract_spectrum(cantor, 0.0);
    REQUIRE(cval <= static_cast<double>(count_triples_brute(CS)) + 1e-9);

    // non-symmetric table must be rejected
    FourierTable bad(2);
    bad.set(1, cplx_t(0.4, 0.1));
    bad.set(-1, cplx_t(0.4, 0.1)); // not the conjugate
    bad.set(0, cplx_t(1, 0));
    REQUIRE_THROWS_AS(fejer_form(bad, 1), SymmetryError);
}

TEST_CASE("scaling experiment: atom reproduces the closed form", "[forms][oracle]") {
    std::vector<double> radii;
    for (int k = 2; k <= 7; ++k) radii.push_back(std::pow(2.0, -k));
    auto rep = scaling_experiment(MeasureModel::atom(0.0), ConfigFamily::identity_ap(1),
                                  0.0, radii);
    REQUIRE(rep.precondition_ok);
    for (std::size_t i = 0; i < radii.size(); ++i)
        REQUIRE(rep.lambda_values[i] ==
                Catch::Approx(1.0 / (2.0 * std::sqrt(kPi) * radii[i])).epsilon(1e-6));
    REQUIRE(rep.fitted_slope == Catch::Approx(-1.0).margin(0.1));
    REQUIRE(rep.predicted_exponent == Catch::Approx(-1.0));
    REQUIRE(rep.pass);
}

TEST_CASE("scaling experiment: Cantor stays under the predicted exponent", "[forms]") {
    std::vector<double> radii;
    for (int k = 2; k <= 6; ++k) radii.push_back(std::pow(3.0, -k));
    const double alpha = std::log(2.0) / std::log(3.0);
    auto rep = scaling_experiment(MeasureModel::middle_thirds_cantor(),
                                  ConfigFamily::identity_ap(1), alpha, radii);
    REQUIRE(rep.precondition_ok);
    REQUIRE(rep.fitted_slope <= 2.0 * alpha - 1.0 + 0.1);
    REQUIRE(rep.pass);
}

TEST_CASE("scaling experiment rejects an unattainable exponent", "[forms]") {
    std::vector<double> radii;
    for (int k = 2; k <= 6; ++k) radii.push_back(std::pow(3.0, -k));
    auto rep = scaling_experiment(MeasureModel::middle_thirds_cantor(),
                                  ConfigFamily::identity_ap(1), 0.5, radii);
    REQUIRE_FALSE(rep.precondition_ok);
    REQUIRE_FALSE(rep.offending_radii.empty());
}
