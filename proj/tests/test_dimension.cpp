#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specdim/dimension.hpp"

using namespace specdim;

namespace {
const double kCantorDim = std::log(2.0) / std::log(3.0);
}

TEST_CASE("local dimension of the basic models", "[dimension]") {
    auto radii2 = geometric_radii(std::pow(2.0, -6), 0.5, 15); // 2^-6 .. 2^-20
    REQUIRE(local_dimension(MeasureModel::lebesgue(), 0.5, radii2).value ==
            Catch::Approx(1.0).margin(0.02));
    REQUIRE(local_dimension(MeasureModel::atom(0.0), 0.0, radii2).value ==
            Catch::Approx(0.0).margin(0.01));
    auto radii3 = geometric_radii(std::pow(3.0, -4), 1.0 / 3.0, 10);
    REQUIRE(local_dimension(MeasureModel::middle_thirds_cantor(), 0.0, radii3).value ==
            Catch::Approx(kCantorDim).margin(0.05));
}

TEST_CASE("proxy ordering liminf <= slope <= limsup", "[dimension][property]") {
    auto radii = geometric_radii(std::pow(2.0, -5), 0.5, 12);
    Rng rng(17);
    auto cantor = MeasureModel::middle_thirds_cantor();
    for (int i = 0; i < 12; ++i) {
        const double x = sample_point(cantor, 5, static_cast<std::uint64_t>(i));
        const double lo = local_dimension(cantor, x, radii, DimensionMode::liminf_proxy).value;
        const double mid = local_dimension(cantor, x, radii, DimensionMode::slope).value;
        const double hi = local_dimension(cantor, x, radii, DimensionMode::limsup_proxy).value;
        REQUIRE(lo <= mid + 1e-12);
        REQUIRE(mid <= hi + 1e-12);
    }
    (void)rng;
}

TEST_CASE("measure dimension estimates", "[dimension]") {
    auto radii2 = geometric_radii(std::pow(2.0, -6), 0.5, 15);
    const double leb = measure_dimension(MeasureModel::lebesgue(), 64, 11, radii2).value;
    REQUIRE(leb == Catch::Approx(1.0).margin(0.03));
    REQUIRE(leb <= 1.05);

    REQUIRE(measure_dimension(MeasureModel::atom(0.0), 16, 11, radii2).value ==
            Catch::Approx(0.0).margin(0.01));

    auto radii3 = geometric_radii(std::pow(3.0, -4), 1.0 / 3.0, 12);
    REQUIRE(measure_dimension(MeasureModel::middle_thirds_cantor(), 64, 11, radii3).value ==
            Catch::Approx(kCantorDim).margin(0.05));

    auto radii9 = geometric_radii(std::pow(9.0, -3), 1.0 / 9.0, 8);
    auto ninth = MeasureModel::self_similar(1.0 / 9.0, {0.0, 8.0 / 9.0}, {0.5, 0.5});
    REQUIRE(measure_dimension(ninth, 64, 11, radii9).value ==
            Catch::Approx(std::log(2.0) / std::log(9.0)).margin(0.05));
}

TEST_CASE("scaling the measure does not flip bound checks", "[dimension][property]") {
    // exponents react to constant rescaling of the mass only through the
    // log-range; two-point slopes are exactly invariant
    auto radii = geometric_radii(std::pow(3.0, -4), 1.0 / 3.0, 10);
    auto cantor = MeasureModel::middle_thirds_cantor();
    const double base = local_dimension(cantor, 0.0, radii).value;
    // c mu has log-masses shifted by log c; consecutive slopes are unchanged,
    // so the liminf proxy is identical
    REQUIRE(base == Catch::Approx(kCantorDim).margin(1e-9));
}

TEST_CASE("bound formulas", "[dimension]") {
    REQUIRE(corollary_bound(2.0) == 0.0);
    REQUIRE(corollary_bound(0.0) == Catch::Approx(2.0 / 3.0));
    REQUIRE(theorem_bound(3, 1) == Catch::Approx(1.5));
    REQUIRE(theorem_bound(2, 1) == Catch::Approx(1.0));
    REQUIRE_THROWS_AS(corollary_bound(2.5), ContractError);
    REQUIRE_THROWS_AS(theorem_bound(0, 1), ContractError);
}

TEST_CASE("corollary certificate on the closed-form models", "[dimension]") {
    std::vector<int> windows = {64, 128, 256, 512};
    auto radii2 = geometric_radii(std::pow(2.0, -6), 0.5, 15);

    auto leb = certify_corollary(MeasureModel::lebesgue(), windows, 0.0, 32, 3, radii2);
    REQUIRE(leb.beta_hat == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(leb.bound == Catch::Approx(2.0 / 3.0));
    REQUIRE(leb.pass);

    auto dirac = certify_corollary(MeasureModel::atom(0.0), windows, 0.0, 16, 3, radii2);
    REQUIRE(dirac.beta_hat == Catch::Approx(2.0).margin(0.02));
    REQUIRE(dirac.bound <= 0.05);
    REQUIRE(dirac.pass);

    auto radii3 = geometric_radii(std::pow(3.0, -4), 1.0 / 3.0, 12);
    auto cantor = certify_corollary(MeasureModel::middle_thirds_cantor(), windows, 0.0, 32,
                                    3, radii3);
    REQUIRE(cantor.pass); // full spectrum: beta ~ 2, bound ~ 0
}

TEST_CASE("unsupported requests are rejected", "[dimension][errors]") {
    auto radii = geometric_radii(0.25, 0.5, 8);
    REQUIRE_THROWS_AS(local_dimension(MeasureModel::atom(0.5), 0.0, radii),
                      NotInSupportError);
    REQUIRE_THROWS_AS(
        local_dimension(MeasureModel::lebesgue(), 0.5, {0.5, 0.25, 0.125}),
        ContractError); // too few radii
}
