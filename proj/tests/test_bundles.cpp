#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specdim/bundles.hpp"
#include "specdim/rng.hpp"

using namespace specdim;

namespace {

LineBundle squares_bundle() { return PolynomialVectorField::squares().line_bundle(); }

LineBundle constant_bundle(const Vec3& dir) {
    LineBundle b;
    b.dim = 3;
    Vec3 d = dir.normalized();
    b.direction = [d](const Vec3&) { return d; };
    return b;
}

LineBundle tautological_bundle() {
    LineBundle b;
    b.dim = 3;
    b.direction = [](const Vec3& xi) { return xi.normalized(); };
    return b;
}

} // namespace

TEST_CASE("operator symbols", "[bundles]") {
    auto div3 = PDOperator::divergence(3);
    Eigen::VectorXd xi(3);
    xi << 1, 2, 3;
    Eigen::MatrixXd S = symbol(div3, xi);
    REQUIRE(S.rows() == 1);
    REQUIRE(S(0, 0) == 1.0);
    REQUIRE(S(0, 1) == 2.0);
    REQUIRE(S(0, 2) == 3.0);
    REQUIRE(symbol(div3, Eigen::VectorXd::Zero(3)).norm() == 0.0);
}

TEST_CASE("symbol homogeneity", "[bundles][property]") {
    auto div3 = PDOperator::divergence(3);
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd xi(3);
        xi << rng.normal(), rng.normal(), rng.normal();
        xi.normalize();
        const double t = rng.uniform(0.1, 10.0);
        REQUIRE((symbol(div3, (t * xi).eval()) - t * symbol(div3, xi)).norm() < 1e-9);
    }
}

TEST_CASE("kernel subspaces via SVD", "[bundles]") {
    REQUIRE(kernel_subspace(Eigen::MatrixXd::Zero(3, 3)).dim() == 3);

    Eigen::MatrixXd row(1, 3);
    row << 1, 2, 3;
    auto K = kernel_subspace(row);
    REQUIRE(K.dim() == 2);
    REQUIRE((row * K.basis).norm() < 1e-12);

    // cross-product matrix of e3 kills exactly span{e3}
    Eigen::MatrixXd X(3, 3);
    X << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    auto Kx = kernel_subspace(X);
    REQUIRE(Kx.dim() == 1);
    REQUIRE(std::abs(std::abs(Kx.basis.col(0).dot(Eigen::Vector3d::UnitZ())) - 1.0) < 1e-12);
}

TEST_CASE("kernel residual bound", "[bundles][property]") {
    Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        Eigen::MatrixXd M(2 + rng.next_below(3), 3);
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < 3; ++j) M(i, j) = rng.normal();
        if (trial % 3 == 0) M.row(0).setZero();
        const double tol = 1e-10;
        auto K = kernel_subspace(M, tol);
        if (K.dim() > 0)
            REQUIRE((M * K.basis).norm() <= 10.0 * tol * M.norm() + 1e-300);
    }
}

TEST_CASE("Grassmannian distance", "[bundles]") {
    auto e1 = Subspace::line(Eigen::Vector3d::UnitX());
    auto e2 = Subspace::line(Eigen::Vector3d::UnitY());
    REQUIRE(grassmann_distance(e1, e1) == 0.0);
    REQUIRE(grassmann_distance(e1, e2) == Catch::Approx(1.0));
    auto diag = Subspace::line(Eigen::Vector3d(1, 1, 0));
    REQUIRE(grassmann_distance(e1, diag) == Catch::Approx(std::sqrt(0.5)));

    Eigen::MatrixXd P(3, 2);
    P << 1, 0, 0, 1, 0, 0;
    REQUIRE_THROWS_AS(grassmann_distance(e1, Subspace{P}), ContractError);
}

TEST_CASE("Grassmannian distance is a metric on random lines", "[bundles][property]") {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        Eigen::Vector3d a(rng.normal(), rng.normal(), rng.normal());
        Eigen::Vector3d b(rng.normal(), rng.normal(), rng.normal());
        Eigen::Vector3d c(rng.normal(), rng.normal(), rng.normal());
        auto A = Subspace::line(a), B = Subspace::line(b), C = Subspace::line(c);
        const double ab = grassmann_distance(A, B), ba = grassmann_distance(B, A);
        REQUIRE(ab == Catch::Approx(ba).margin(1e-9));
        REQUIRE(ab <= grassmann_distance(A, C) + grassmann_distance(C, B) + 1e-9);
    }
}

TEST_CASE("level sets of the squares bundle", "[bundles]") {
    auto psi = squares_bundle();
    const SphereGrid grid = SphereGrid::fibonacci(20000);

    auto L = level_set(psi, Vec3(1, 1, 1), grid, 2e-2);
    REQUIRE(L.points.size() == 8);
    for (const auto& p : L.points) {
        REQUIRE(std::abs(std::abs(p.x()) - 1.0 / std::sqrt(3.0)) < 2e-3);
        REQUIRE(std::abs(std::abs(p.y()) - 1.0 / std::sqrt(3.0)) < 2e-3);
    }

    auto Lz = level_set(psi, Vec3(0, 0, 1), grid, 2e-2);
    REQUIRE(Lz.points.size() == 2);
    for (const auto& p : Lz.points) REQUIRE(std::abs(std::abs(p.z()) - 1.0) < 1e-4);

    auto Lneg = level_set(psi, Vec3(1, -1, 0), grid, 2e-2);
    REQUIRE(Lneg.points.empty());
}

TEST_CASE("level set equivariance under signed permutations", "[bundles][property]") {
    auto psi = squares_bundle();
    const SphereGrid grid = SphereGrid::fibonacci(20000);
    // permuting v permutes the level set of the squares bundle
    auto L1 = level_set(psi, Vec3(1.0, 0.49, 0.25), grid, 2e-2);
    auto L2 = level_set(psi, Vec3(0.49, 1.0, 0.25), grid, 2e-2);
    REQUIRE(L1.points.size() == L2.points.size());
    for (const auto& p : L1.points) {
        const Vec3 q(p.y(), p.x(), p.z());
        double best = 10;
        for (const auto& r : L2.points) best = std::min(best, geodesic_distance(q, r));
        REQUIRE(best < 2e-2);
    }
}

TEST_CASE("one-cone condition", "[bundles]") {
    const SphereGrid grid = SphereGrid::fibonacci(500);
    auto constant = constant_bundle(Vec3(1, 0, 0));
    auto as_subspace = [](const LineBundle& b) {
        return [b](const Vec3& xi) { return b.subspace_at(xi); };
    };
    auto r1 = one_cone_condition(as_subspace(constant), grid);
    REQUIRE_FALSE(r1.trivial);
    REQUIRE(std::abs(std::abs(r1.witness.dot(Eigen::Vector3d::UnitX())) - 1.0) < 1e-9);

    auto taut = tautological_bundle();
    auto r2 = one_cone_condition(as_subspace(taut), grid);
    REQUIRE(r2.trivial);
    REQUIRE(r2.certificate_nodes.size() <= 3);

    auto psi = squares_bundle();
    REQUIRE(one_cone_condition(as_subspace(psi), grid).trivial);
}

TEST_CASE("wave cone: divergence is refuted on a generic line", "[bundles]") {
    auto div3 = PDOperator::divergence(3);
    Eigen::VectorXd w(3);
    w << 0.3, -0.2, 0.9;
    auto res = wave_cone_witness(div3, 1, w, 32, 1234);
    REQUIRE(res.status == WaveConeResult::Status::refuted);
    REQUIRE(res.refuting_min_norm > 1e-6);
}

TEST_CASE("wave cone: operators with a common kernel direction verify", "[bundles]") {
    // all symbol rows annihilate e3: matrices with zero third column
    PDOperator op;
    op.order = 1;
    op.out_rows = 2;
    op.in_cols = 3;
    for (int i = 0; i < 3; ++i) {
        MultiIndex alpha(3, 0);
        alpha[static_cast<std::size_t>(i)] = 1;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 3);
        A(0, 0) = 1.0;
        A(1, 1) = i == 2 ? 0.5 : -1.0;
        op.terms.emplace_back(alpha, A);
    }
    Eigen::VectorXd w(3);
    w << 0, 0, 1;
    auto res = wave_cone_witness(op, 2, w, 64, 99);
    REQUIRE(res.status == WaveConeResult::Status::verified);
}

TEST_CASE("rotation separation search", "[bundles]") {
    CapFamily single;
    single.caps.push_back(Cap{Vec3(1, 0, 0), 0.1});
    std::vector<Mat3> cands = {Mat3::Identity(), rotation_about(Vec3(0, 0, 1), kPi)};
    auto res = rotation_separation_search(single, cands);
    REQUIRE(res.found);
    REQUIRE(res.candidate_index == 1);
    REQUIRE(res.margin == Catch::Approx(kPi - 0.2).margin(1e-9));

    CapFamily whole;
    whole.caps.push_back(Cap{Vec3(0, 0, 1), kPi});
    auto res2 = rotation_separation_search(whole, cands);
    REQUIRE_FALSE(res2.found);

    // eight cube-vertex caps separate under a 45-degree turn about e3
    CapFamily cube;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1})
                cube.caps.push_back(Cap{Vec3(sx, sy, sz).normalized(), 0.1});
    const Mat3 R45 = rotation_about(Vec3(0, 0, 1), kPi / 4);
    const double margin = separation_margin(cube, R45);
    // oracle: minimal geodesic distance between vertices and rotated vertices
    double expect = kPi;
    for (const auto& ci : cube.caps)
        for (const auto& cj : cube.caps)
            expect = std::min(expect, geodesic_distance(ci.center, R45 * cj.center));
    REQUIRE(margin == Catch::Approx(expect - 0.2).margin(1e-12));
    REQUIRE(margin > 0.0);

    REQUIRE_THROWS_AS(rotation_separation_search(single, {}), ContractError);
}

TEST_CASE("separation margins are conjugation invariant", "[bundles][property]") {
    Rng rng(77);
    CapFamily F;
    for (int i = 0; i < 5; ++i) {
        Vec3 c(rng.normal(), rng.normal(), rng.normal());
        F.caps.push_back(Cap{c.normalized(), rng.uniform(0.05, 0.3)});
    }
    const Mat3 R = rotation_about(Vec3(1, 2, -1).normalized(), 0.8);
    for (int trial = 0; trial < 10; ++trial) {
        Vec3 ax(rng.normal(), rng.normal(), rng.normal());
        const Mat3 Q = rotation_about(ax.normalized(), rng.uniform(0, kPi));
        CapFamily FQ;
        for (const auto& c : F.caps) FQ.caps.push_back(Cap{Q * c.center, c.radius});
        REQUIRE(separation_margin(FQ, (Q * R * Q.transpose()).eval()) ==
                Catch::Approx(separation_margin(F, R)).margin(1e-9));
    }
}

TEST_CASE("dimension bound certificate for the squares bundle", "[bundles]") {
    auto psi = squares_bundle();
    const SphereGrid grid = SphereGrid::fibonacci(20000);
    auto cert = certify_dimension_bound(psi, 1, grid, 24, 2026, 2e-2);
    REQUIRE(cert.bound == Catch::Approx(1.5));
    REQUIRE(cert.certified);

    auto flat = constant_bundle(Vec3(0, 0, 1));
    auto cert2 = certify_dimension_bound(flat, 1, grid, 8, 2026, 2e-2);
    REQUIRE_FALSE(cert2.certified); // the constant direction's level set is everything
}
