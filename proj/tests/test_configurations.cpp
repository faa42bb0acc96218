#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "specdim/configurations.hpp"
#include "specdim/measures.hpp"
#include "specdim/rng.hpp"

using namespace specdim;

namespace {

SpectrumWindow random_window(int n, double density, Rng& rng) {
    std::vector<int> members;
    for (int m = -n; m <= n; ++m)
        if (rng.next_double() < density) members.push_back(m);
    return SpectrumWindow(n, std::move(members));
}

std::int64_t full_interval_count(int n) {
    // sum over r of max(0, 2n+1 - 2|r|)
    std::int64_t acc = 0;
    for (int r = -2 * n; r <= 2 * n; ++r) {
        const std::int64_t len = 2 * n + 1 - 2 * std::abs(r);
        if (len > 0) acc += len;
    }
    return acc;
}

} // namespace

TEST_CASE("spectrum extraction", "[configurations]") {
    auto leb = extract_spectrum(fourier_coefficients(MeasureModel::lebesgue(), 6), 0.0);
    REQUIRE(leb.members == std::vector<int>{0});

    auto dirac = extract_spectrum(fourier_coefficients(MeasureModel::atom(0.0), 5), 0.0);
    REQUIRE(static_cast<int>(dirac.members.size()) == 11);

    auto riesz = MeasureModel::riesz({4, 16, 64}, {1.0, 1.0, 1.0});
    auto S = extract_spectrum(fourier_coefficients(riesz, 100), 0.0);
    // enumeration oracle: all signed sums of {4, 16, 64} within the window
    std::set<int> expect;
    for (int e1 : {-1, 0, 1})
        for (int e2 : {-1, 0, 1})
            for (int e3 : {-1, 0, 1}) {
                int v = 4 * e1 + 16 * e2 + 64 * e3;
                if (std::abs(v) <= 100) expect.insert(v);
            }
    REQUIRE(std::set<int>(S.members.begin(), S.members.end()) == expect);
    REQUIRE(S.contains(76));
    REQUIRE_FALSE(S.contains(92));
}

TEST_CASE("brute-force triple counts match hand enumeration", "[configurations]") {
    REQUIRE(count_triples_brute(SpectrumWindow(1, {-1, 0, 1})) == 5);
    REQUIRE(count_triples_brute(SpectrumWindow(16, {1, 4, 16})) == 3);
    for (int n : {1, 2, 64, 512}) {
        std::vector<int> all;
        for (int m = -n; m <= n; ++m) all.push_back(m);
        const std::int64_t got = count_triples_brute(SpectrumWindow(n, std::move(all)));
        REQUIRE(got == full_interval_count(n));
        REQUIRE(got == 2LL * n * n + 2 * n + 1);
    }
}

TEST_CASE("FFT counting equals brute force", "[configurations][oracle]") {
    REQUIRE(count_triples_fft(SpectrumWindow(1, {-1, 0, 1})) == 5);
    REQUIRE(count_triples_fft(SpectrumWindow(8, {})) == 0);
    Rng rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 16 + static_cast<int>(rng.next_below(700));
        auto S = random_window(n, rng.uniform(0.02, 0.9), rng);
        REQUIRE(count_triples_fft(S) == count_triples_brute(S));
    }
}

TEST_CASE("trivial triples: constant or symmetric about zero", "[configurations]") {
    for (int n : {1, 5, 64}) {
        std::vector<int> all;
        for (int m = -n; m <= n; ++m) all.push_back(m);
        REQUIRE(trivial_triple_count(SpectrumWindow(n, std::move(all))) == 4 * n + 1);
    }
    REQUIRE(trivial_triple_count(SpectrumWindow(1, {-1, 0, 1})) == 5);
    REQUIRE(trivial_triple_count(SpectrumWindow(8, {2, 5, 8})) == 3);
    REQUIRE_FALSE(has_nontrivial_triples(SpectrumWindow(1, {-1, 0, 1})));
    REQUIRE(has_nontrivial_triples(SpectrumWindow(8, {2, 5, 8, 0, -2})));
}

TEST_CASE("counting invariants under negation and inclusion", "[configurations][property]") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 8 + static_cast<int>(rng.next_below(200));
        auto S = random_window(n, rng.uniform(0.05, 0.8), rng);
        REQUIRE(count_triples_brute(S.negated()) == count_triples_brute(S));
        REQUIRE(trivial_triple_count(S) <= 4 * n + 1);
        REQUIRE(count_triples_brute(S) <= 2LL * n * n + 2 * n + 1);
        // supersets only add triples
        auto bigger = S.members;
        for (int extra = 0; extra < 5; ++extra) {
            int v = static_cast<int>(rng.next_below(2 * n + 1)) - n;
            bigger.push_back(v);
        }
        SpectrumWindow S2(n, bigger);
        REQUIRE(count_triples_brute(S2) >= count_triples_brute(S));
    }
}

TEST_CASE("growth exponent fits", "[configurations]") {
    std::vector<std::pair<double, double>> quad, flat, lin;
    for (double n : {64.0, 128.0, 256.0, 512.0}) {
        quad.emplace_back(n, 2 * n * n + 2 * n + 1);
        flat.emplace_back(n, 7.0);
        lin.emplace_back(n, 5.0 * n);
    }
    REQUIRE(growth_exponent(quad).beta == Catch::Approx(2.0).margin(0.02));
    REQUIRE(growth_exponent(flat).beta == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(growth_exponent(lin).beta == Catch::Approx(1.0).margin(0.01));
    REQUIRE_THROWS_AS(growth_exponent({{1, 1}, {2, 2}, {3, 3}}), ContractError);
    REQUIRE_THROWS_AS(growth_exponent({{1, 1}, {2, 0.0}, {3, 3}, {4, 4}}), ContractError);
}

TEST_CASE("grid configuration counts", "[configurations]") {
    // identity family: count equals the member count
    GridSpectrum G(2, 2.0, 128);
    G.fill([](const std::vector<double>& x) {
        return x[0] * x[0] + x[1] * x[1] <= 1.0;
    });
    auto ident = count_b_configurations(G, ConfigFamily::identity_ap(2));
    REQUIRE(ident.count == G.member_count());

    // negation family on the disk: the estimate is the disk area
    GridSpectrum disk(2, 2.0, 512);
    disk.fill([](const std::vector<double>& x) {
        return x[0] * x[0] + x[1] * x[1] <= 1.0;
    });
    ConfigFamily minus(2, {-Eigen::MatrixXd::Identity(2, 2)});
    auto sym = count_b_configurations(disk, minus);
    REQUIRE(sym.measure_estimate == Catch::Approx(3.14159265).margin(0.05));

    // right half-annulus maps off itself under negation
    GridSpectrum half(2, 2.5, 256);
    half.fill([](const std::vector<double>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return r2 >= 1.0 && r2 <= 4.0 && x[0] > 0.0;
    });
    REQUIRE(count_b_configurations(half, minus).count == 0);

    ConfigFamily wrong_dim(3, {Eigen::MatrixXd::Identity(3, 3)});
    REQUIRE_THROWS_AS(count_b_configurations(G, wrong_dim), ContractError);
}
