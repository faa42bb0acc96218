// The sphere construction pipeline: the curve Gamma and its verifiers, the
// covering ball family, the polynomials Q and P (factored, log-scale), the
// assembled operator, the cap neighborhoods, and conditions (A), (B), (C).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specdim/bundles.hpp"
#include "specdim/errors.hpp"
#include "specdim/polynomial.hpp"
#include "specdim/rng.hpp"
#include "specdim/sphere.hpp"

namespace specdim {

// ---------------------------------------------------------------------------
// GammaCurve: a centrally symmetric union of circle arcs on S^2.

struct GammaCurve {
    std::vector<SphereArc> segments;
    bool centrally_symmetric = true;

    double length() const {
        double L = 0;
        for (const auto& s : segments) L += s.length();
        return L;
    }

    std::vector<Vec3> sample(double spacing) const {
        std::vector<Vec3> pts;
        for (const auto& s : segments) {
            auto seg = s.sample(spacing);
            pts.insert(pts.end(), seg.begin(), seg.end());
        }
        return pts;
    }
};

// Parameters of the shipped curve family: an equator with two antipodal
// holes, a pair of offset blocking circles with surgical gaps, and four
// short patch arcs closing the remaining escape families.
struct GammaParams {
    double hole_half_width = 0.45; // w: equator holes at +-e2
    double blocking_offset = 0.30; // beta: blocking circles {y = +-sin beta}
    bool with_blocking = true;
    double gap_x0 = 0.15;          // half-width of the gap at the southern x=0 crossing
    double gap_q = 0.18;           // half-widths of the four preimage gaps
    bool with_patches = true;
    double patch_halflength = 0.45;
    double patch_s = 0.5854;       // pencil parameter of the patch center (pi/4 - 0.2)
};

namespace detail {

// arc-parameter t of the point (c cos t, s, -c sin t) on the blocking circle
inline double blocking_t(double x, double z, double c) {
    return std::atan2(-z / c, x / c);
}

inline void append_circle_minus_gaps(std::vector<SphereArc>& out, const Vec3& axis,
                                     double polar, const Vec3& u_frame, const Vec3& v_frame,
                                     std::vector<std::pair<double, double>> gaps) {
    // gaps: (center t, half width in t). Remove them from the circle [0, 2pi).
    auto wrap = [](double t) {
        while (t < 0) t += 2 * kPi;
        while (t >= 2 * kPi) t -= 2 * kPi;
        return t;
    };
    std::vector<std::pair<double, double>> cut; // non-wrapping closed intervals
    for (auto& [tc, hw] : gaps) {
        if (hw <= 0) continue;
        const double b = wrap(tc - hw), e = wrap(tc + hw);
        if (b <= e) {
            cut.emplace_back(b, e);
        } else {
            cut.emplace_back(b, 2 * kPi);
            cut.emplace_back(0.0, e);
        }
    }
    std::sort(cut.begin(), cut.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : cut) {
        if (!merged.empty() && iv.first <= merged.back().second + 1e-12)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    std::vector<std::pair<double, double>> kept;
    if (merged.empty()) {
        kept.emplace_back(0.0, 2 * kPi);
    } else {
        for (std::size_t i = 0; i + 1 < merged.size(); ++i)
            if (merged[i + 1].first > merged[i].second + 1e-9)
                kept.emplace_back(merged[i].second, merged[i + 1].first);
        // wrap-around piece from the last gap end to the first gap begin
        const double a = merged.back().second, b = merged.front().first + 2 * kPi;
        if (b > a + 1e-9) kept.emplace_back(a, b);
    }
    for (auto& [a, b] : kept) {
        SphereArc arc;
        arc.axis = axis.normalized();
        arc.polar = polar;
        arc.u = u_frame;
        arc.v = v_frame;
        arc.t0 = a;
        arc.t1 = b;
        out.push_back(arc);
    }
}

} // namespace detail

// Candidate curve. Validity is established only by the two verifiers below.
inline GammaCurve build_gamma(const GammaParams& p = {}) {
    if (p.hole_half_width < 0 || p.hole_half_width >= kPi / 4)
        throw ContractError("build_gamma: hole half-width must lie in [0, pi/4)");
    if (p.with_blocking && !(p.blocking_offset > 0 && p.blocking_offset < kPi / 4))
        throw ContractError("build_gamma: blocking offset must lie in (0, pi/4)");

    GammaCurve curve;
    const double w = p.hole_half_width;

    // equator with holes at +-e2 (longitude measured from e1)
    if (w == 0.0) {
        SphereArc eq;
        eq.axis = Vec3::UnitZ();
        eq.polar = kPi / 2;
        eq.u = Vec3::UnitX();
        eq.v = Vec3::UnitY();
        eq.t0 = 0;
        eq.t1 = 2 * kPi;
        curve.segments.push_back(eq);
    } else {
        for (double center : {0.0, kPi}) { // arcs through +e1 and -e1
            SphereArc arc;
            arc.axis = Vec3::UnitZ();
            arc.polar = kPi / 2;
            arc.u = Vec3::UnitX();
            arc.v = Vec3::UnitY();
            arc.t0 = center - (kPi / 2 - w);
            arc.t1 = center + (kPi / 2 - w);
            curve.segments.push_back(arc);
        }
    }
    if (!p.with_blocking) return curve;

    const double beta = p.blocking_offset;
    const double s = std::sin(beta), c = std::cos(beta);
    const double a = std::sqrt(std::max(0.0, 1.0 - 2.0 * s * s));

    // blocking circle C = {y = sin beta}: point(t) = (c cos t, s, -c sin t)
    // special points in the t parameter (gap centers; arc half-widths
    // converted to t by dividing by the circle radius c)
    const double t_x0S = kPi / 2; // (0, s, -c): southern x=0 crossing, removed
    const double t_q1 = detail::blocking_t(s, a, c);
    const double t_q2 = detail::blocking_t(-s, a, c);
    const double t_q3 = detail::blocking_t(s, -a, c);
    const double t_q4 = detail::blocking_t(-s, -a, c);
    std::vector<std::pair<double, double>> gaps = {
        {t_x0S, p.gap_x0 / c}, {t_q1, p.gap_q / c}, {t_q2, p.gap_q / c},
        {t_q3, p.gap_q / c},   {t_q4, p.gap_q / c}};

    std::vector<SphereArc> blocking;
    detail::append_circle_minus_gaps(blocking, Vec3::UnitY(), kPi / 2 - beta,
                                     Vec3::UnitX(), -Vec3::UnitZ(), gaps);
    for (const auto& arc : blocking) {
        curve.segments.push_back(arc);
        curve.segments.push_back(arc.antipodal());
    }

    if (p.with_patches) {
        // Patch arcs close the two escape families through the q-gap pairs.
        // Family 1 pivots around normals nu(t) = (sin t, 0, cos t) near t_q3;
        // family 2 near t_q4. Patches live on the circles of those pencils.
        auto add_patch = [&](double t_pivot) {
            const Vec3 nu(std::sin(t_pivot), 0.0, std::cos(t_pivot));
            const Vec3 m(-std::cos(t_pivot), 0.0, std::sin(t_pivot));
            const Vec3 center =
                (std::cos(p.patch_s) * Vec3::UnitY() + std::sin(p.patch_s) * m).normalized();
            const Vec3 dir = (nu - nu.dot(center) * center).normalized();
            SphereArc tau;
            tau.axis = center.cross(dir).normalized();
            tau.polar = kPi / 2;
            tau.u = center;
            tau.v = dir;
            tau.t0 = -p.patch_halflength;
            tau.t1 = p.patch_halflength;
            curve.segments.push_back(tau);
            curve.segments.push_back(tau.antipodal());
        };
        add_patch(t_q3 < 0 ? t_q3 + 2 * kPi : t_q3);
        add_patch(t_q4);
    }
    return curve;
}

// ---------------------------------------------------------------------------
// Verifier 1: every sampled plane (great circle) meets the curve.

struct PlaneCrossingReport {
    bool pass = false;
    double worst_margin = 0.0; // penetration depth of the hardest plane
    Vec3 worst_normal = Vec3::UnitZ();
    int planes = 0;
};

namespace detail {

// Penetration depth of the curve across the plane with normal nu: the best
// segment-wise min(|positive side reach|, |negative side reach|). A touching
// curve (range hitting zero) counts as crossing with zero margin.
inline double crossing_margin(const GammaCurve& curve, const Vec3& nu) {
    double best = -1e300;
    for (const auto& seg : curve.segments) {
        double lo, hi;
        seg.functional_range(nu, lo, hi);
        const double depth = std::min(hi, -lo); // >= 0 iff lo <= 0 <= hi
        best = std::max(best, depth);
    }
    return best;
}

} // namespace detail

inline PlaneCrossingReport verify_gamma_plane_crossing(const GammaCurve& curve,
                                                       int plane_samples,
                                                       std::uint64_t seed) {
    PlaneCrossingReport rep;
    rep.worst_margin = 1e300;
    std::vector<Vec3> normals;
    const int grid_part = plane_samples / 2;
    const SphereGrid g = SphereGrid::fibonacci(std::max(8, grid_part));
    normals.insert(normals.end(), g.nodes.begin(), g.nodes.end());
    Rng rng(seed, 11);
    while (static_cast<int>(normals.size()) < plane_samples) {
        Vec3 nu(rng.normal(), rng.normal(), rng.normal());
        if (nu.norm() > 1e-9) normals.push_back(nu.normalized());
    }
    for (const Vec3& nu : normals) {
        const double m = detail::crossing_margin(curve, nu);
        if (m < rep.worst_margin) {
            rep.worst_margin = m;
            rep.worst_normal = nu;
        }
    }
    rep.planes = static_cast<int>(normals.size());
    rep.pass = rep.worst_margin >= -1e-6; // touching counts as intersecting
    return rep;
}

// ---------------------------------------------------------------------------
// Verifier 2: minimal geodesic distance between the curve and its rotation.

inline double arc_pair_min_distance(const SphereArc& A, const SphereArc& B) {
    // coarse grid, then alternating golden-section refinement
    const int na = std::max(8, static_cast<int>(A.length() / 0.02) + 1);
    const int nb = std::max(8, static_cast<int>(B.length() / 0.02) + 1);
    double best = 1e300, ta = A.t0, tb = B.t0;
    for (int i = 0; i <= na; ++i) {
        const double t = A.t0 + (A.t1 - A.t0) * i / na;
        const Vec3 pa = A.point(t);
        for (int j = 0; j <= nb; ++j) {
            const double u = B.t0 + (B.t1 - B.t0) * j / nb;
            const double d = geodesic_distance(pa, B.point(u));
            if (d < best) {
                best = d;
                ta = t;
                tb = u;
            }
        }
    }
    auto dist = [&](double t, double u) { return geodesic_distance(A.point(t), B.point(u)); };
    const double step_a = (A.t1 - A.t0) / na, step_b = (B.t1 - B.t0) / nb;
    double la = std::max(A.t0, ta - step_a), ra = std::min(A.t1, ta + step_a);
    double lb = std::max(B.t0, tb - step_b), rb = std::min(B.t1, tb + step_b);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 48; ++it) {
        { // refine t with u fixed at midpoint of [lb, rb]
            const double u = 0.5 * (lb + rb);
            double x1 = ra - gr * (ra - la), x2 = la + gr * (ra - la);
            if (dist(x1, u) < dist(x2, u)) ra = x2; else la = x1;
        }
        {
            const double t = 0.5 * (la + ra);
            double y1 = rb - gr * (rb - lb), y2 = lb + gr * (rb - lb);
            if (dist(t, y1) < dist(t, y2)) rb = y2; else lb = y1;
        }
    }
    best = std::min(best, dist(0.5 * (la + ra), 0.5 * (lb + rb)));
    return best;
}

inline double verify_gamma_separation(const GammaCurve& curve, const Mat3& R) {
    double best = 1e300;
    for (const auto& A : curve.segments)
        for (const auto& B : curve.segments)
            best = std::min(best, arc_pair_min_distance(A, B.rotated(R)));
    // resolution correction for the coarse stage is dominated by the golden
    // refinement; subtract a conservative slack
    return best - 1e-6;
}

// ---------------------------------------------------------------------------
// Ball family covering the curve.

struct BallFamily {
    std::vector<Vec3> centers;
    double radius = 0.0; // Euclidean

    double angular_radius() const { return chord_to_angle(radius); }

    CapFamily caps(double extra_angular = 0.0) const {
        CapFamily F;
        for (const auto& a : centers) F.caps.push_back(Cap{a, angular_radius() + extra_angular});
        return F;
    }
};

inline BallFamily cover_gamma(const GammaCurve& curve, double delta, int max_centers = 4000) {
    if (delta <= 0 || delta >= 1.0)
        throw ContractError("cover_gamma: delta must lie in (0,1)");
    BallFamily fam;
    fam.radius = delta / 2.0;
    const double rho = chord_to_angle(fam.radius);
    const double spacing = std::min(rho / 8.0, 0.01);
    const auto samples = curve.sample(spacing);
    std::vector<char> covered(samples.size(), 0);
    const double effective = rho - 1.5 * spacing; // guards the continuum between samples
    if (effective <= 0) throw ContractError("cover_gamma: delta below sampling resolution");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (covered[i]) continue;
        const Vec3 a = samples[i];
        fam.centers.push_back(a);
        fam.centers.push_back(-a);
        if (static_cast<int>(fam.centers.size()) > max_centers)
            throw CapacityError("cover_gamma: cover exceeds the configured maximum size");
        for (std::size_t j = 0; j < samples.size(); ++j) {
            if (covered[j]) continue;
            if (geodesic_distance(samples[j], a) <= effective ||
                geodesic_distance(samples[j], -a) <= effective)
                covered[j] = 1;
        }
    }
    return fam;
}

// ---------------------------------------------------------------------------
// Construction parameters and the factored bundle.

struct ConstructionParams {
    double delta = 0.05;
    int N = 0;
    double r = 0.0;        // = delta / 2
    double K_log10 = 0.0;  // log10 K with K = delta^-(4N+1)

    static ConstructionParams from(double delta, int N) {
        ConstructionParams p;
        p.delta = delta;
        p.N = N;
        p.r = delta / 2.0;
        p.K_log10 = (4.0 * N + 1.0) * std::log10(1.0 / delta);
        return p;
    }
};

// P = (K x^2 Q, K y^2 Q, 1 + K z^2 Q) with Q = prod_j (|xi - a_j|^2 - r^2)^2,
// evaluated through log10 magnitudes so the enormous K and Q scales stay
// representable. All three components are nonnegative on the sphere.
struct ConstructionBundle {
    BallFamily family;
    ConstructionParams params;

    double log10_Q(const Vec3& xi) const {
        double acc = 0.0;
        for (const auto& a : family.centers) {
            const double f = (xi - a).squaredNorm() - params.r * params.r;
            if (f == 0.0) return -std::numeric_limits<double>::infinity();
            acc += 2.0 * std::log10(std::abs(f));
        }
        return acc;
    }

    // unit direction of P at xi on the sphere, plus log10 |P|
    Vec3 direction(const Vec3& xi, double* log10_mag = nullptr) const {
        const double lq = log10_Q(xi);
        const double lkq = params.K_log10 + lq; // log10(K Q)
        auto log_sq = [](double v) {
            return v == 0.0 ? -std::numeric_limits<double>::infinity()
                            : 2.0 * std::log10(std::abs(v));
        };
        double l[3] = {lkq + log_sq(xi.x()), lkq + log_sq(xi.y()), 0.0};
        // l[2] = log10(1 + K z^2 Q)
        const double lz = lkq + log_sq(xi.z());
        l[2] = lz > 0 ? lz + std::log10(1.0 + std::pow(10.0, -lz))
                      : std::log10(1.0 + std::pow(10.0, lz));
        const double top = std::max({l[0], l[1], l[2]});
        Vec3 v(std::pow(10.0, l[0] - top), std::pow(10.0, l[1] - top),
               std::pow(10.0, l[2] - top));
        const double n = v.norm();
        if (log10_mag) *log10_mag = top + std::log10(n);
        return v / n;
    }

    LineBundle bundle() const {
        LineBundle b;
        b.dim = 3;
        const ConstructionBundle self = *this;
        b.direction = [self](const Vec3& xi) { return self.direction(xi.normalized()); };
        b.log10_magnitude = [self](const Vec3& xi) {
            double lm;
            self.direction(xi.normalized(), &lm);
            return lm;
        };
        return b;
    }

    // operator with symbol = cross-product matrix of the P direction;
    // kernel span{P}. Carries the certified zero structure on the T_i.
    PDOperator assembled_operator() const {
        PDOperator op;
        op.order = 4 * params.N + 2;
        op.out_rows = 3;
        op.in_cols = 3;
        const ConstructionBundle self = *this;
        op.factored_symbol = [self](const Vec3& xi) {
            const Vec3 p = self.direction(xi);
            Eigen::MatrixXd M(3, 3);
            M << 0, -p.z(), p.y(),
                 p.z(), 0, -p.x(),
                 -p.y(), p.x(), 0;
            return M;
        };
        op.zero_caps = family.caps();
        op.zero_caps_w = Vec3::UnitZ();
        op.zero_points = {Vec3::UnitZ(), -Vec3::UnitZ()};
        return op;
    }
};

struct Construction {
    GammaParams gamma_params;
    GammaCurve curve;
    BallFamily family;
    ConstructionParams params;
    Mat3 rotation = coordinate_cycle_rotation();

    ConstructionBundle bundle_data() const { return ConstructionBundle{family, params}; }
};

inline Construction build_construction(double delta, const GammaParams& gp = {}) {
    Construction con;
    con.gamma_params = gp;
    con.curve = build_gamma(gp);
    con.family = cover_gamma(con.curve, delta);
    con.params = ConstructionParams::from(delta, static_cast<int>(con.family.centers.size()));
    return con;
}

// ---------------------------------------------------------------------------
// Expanded polynomials for small families (tests and toy cases).

inline Polynomial build_Q(const BallFamily& family, int max_centers = 12) {
    if (static_cast<int>(family.centers.size()) > max_centers)
        throw CapacityError("build_Q: expansion too large; use the factored evaluation form");
    Polynomial Q = Polynomial::constant(3, 1.0);
    for (const auto& a : family.centers) {
        // |xi - a|^2 - r^2 = |xi|^2 - 2 <xi, a> + |a|^2 - r^2
        Polynomial g(3);
        for (int i = 0; i < 3; ++i) {
            MultiIndex sq(3, 0), lin(3, 0);
            sq[static_cast<std::size_t>(i)] = 2;
            lin[static_cast<std::size_t>(i)] = 1;
            g.add_term(sq, 1.0);
            if (a[i] != 0.0) g.add_term(lin, -2.0 * a[i]);
        }
        g.add_term(MultiIndex(3, 0), a.squaredNorm() - family.radius * family.radius);
        Q = Q * (g * g);
    }
    return Q;
}

inline PolynomialVectorField build_P(const Polynomial& Q, double K) {
    if (K <= 0) throw ContractError("build_P: K must be positive");
    double max_coeff = 0.0;
    for (const auto& [m, c] : Q.terms) max_coeff = std::max(max_coeff, std::abs(c));
    if (max_coeff * K > 1e290)
        throw CapacityError("build_P: coefficients overflow; use the factored evaluation form");
    std::vector<Polynomial> comps;
    comps.push_back(Polynomial::variable(3, 0, 2) * Q * K);
    comps.push_back(Polynomial::variable(3, 1, 2) * Q * K);
    comps.push_back(Polynomial::constant(3, 1.0) + Polynomial::variable(3, 2, 2) * Q * K);
    return PolynomialVectorField(3, std::move(comps));
}

// Homogenization of even polynomials (re-exported from polynomial.hpp).
inline Polynomial homogenize(const Polynomial& F) { return homogenize_even(F); }

// Operator with the 3x3 cross-product symbol of P; kernel span{P} for P != 0.
// The paper's four-row variant is kept behind a flag: its rows are
// P x e1, (P x e1) x e1, P x e2, (P x e2) x e2, and span{P} is NOT its
// kernel in general (P = e3 already fails), which the tests document.
inline PDOperator assemble_operator(const PolynomialVectorField& P,
                                    bool paper_four_row_variant = false) {
    int degree = -1;
    if (!P.is_homogeneous(&degree))
        throw ContractError("assemble_operator: components must be homogeneous of equal degree");
    if (P.components.size() != 3)
        throw ContractError("assemble_operator: need exactly three components");
    PDOperator op;
    op.order = degree;
    op.in_cols = 3;
    op.out_rows = paper_four_row_variant ? 4 : 3;

    std::map<MultiIndex, Eigen::MatrixXd> acc;
    auto add = [&](const MultiIndex& m, int row, int col, double v) {
        auto it = acc.find(m);
        if (it == acc.end())
            it = acc.emplace(m, Eigen::MatrixXd::Zero(op.out_rows, op.in_cols)).first;
        it->second(row, col) += v;
    };
    const Polynomial& p1 = P.components[0];
    const Polynomial& p2 = P.components[1];
    const Polynomial& p3 = P.components[2];
    if (!paper_four_row_variant) {
        // rows (0, -P3, P2), (P3, 0, -P1), (-P2, P1, 0)
        for (const auto& [m, c] : p3.terms) add(m, 0, 1, -c), add(m, 1, 0, c);
        for (const auto& [m, c] : p2.terms) add(m, 0, 2, c), add(m, 2, 0, -c);
        for (const auto& [m, c] : p1.terms) add(m, 1, 2, -c), add(m, 2, 1, c);
    } else {
        // rows (0, P3, -P2), (0, -P2, -P3), (-P3, 0, P1), (-P1, 0, -P3)
        for (const auto& [m, c] : p3.terms)
            add(m, 0, 1, c), add(m, 1, 2, -c), add(m, 2, 0, -c), add(m, 3, 2, -c);
        for (const auto& [m, c] : p2.terms) add(m, 0, 2, -c), add(m, 1, 1, -c);
        for (const auto& [m, c] : p1.terms) add(m, 2, 2, c), add(m, 3, 0, -c);
    }
    for (auto& [m, A] : acc) op.terms.emplace_back(m, A);
    return op;
}

// ---------------------------------------------------------------------------
// Cap neighborhoods Gamma_delta(v).

inline std::vector<Vec3> level_candidates_p(const Vec3& v) {
    // (+-sqrt|v1|, +-sqrt|v2|, +-sqrt|v3|) normalized, deduplicated
    const double s1 = std::sqrt(std::abs(v.x())), s2 = std::sqrt(std::abs(v.y())),
                 s3 = std::sqrt(std::abs(v.z()));
    std::vector<Vec3> out;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                Vec3 p(sx * s1, sy * s2, sz * s3);
                if (p.norm() < 1e-15) continue;
                p.normalize();
                bool dup = false;
                for (const auto& q : out)
                    if ((q - p).norm() < 1e-12) {
                        dup = true;
                        break;
                    }
                if (!dup) out.push_back(p);
            }
    return out;
}

inline CapFamily gamma_delta_neighborhood(const Vec3& v, const ConstructionParams& params,
                                          const BallFamily& family) {
    if (v.norm() == 0) throw ContractError("gamma_delta_neighborhood: v must be nonzero");
    CapFamily F;
    const double big = chord_to_angle(4.0 * params.delta);
    const double small = chord_to_angle(params.delta);
    for (const auto& a : family.centers) F.caps.push_back(Cap{a, big});
    for (const auto& p : level_candidates_p(v.normalized())) F.caps.push_back(Cap{p, small});
    F.caps.push_back(Cap{Vec3::UnitZ(), small});
    F.caps.push_back(Cap{-Vec3::UnitZ(), small});
    return F;
}

// ---------------------------------------------------------------------------
// Conditions (A), (B), (C).

struct ConditionsReport {
    bool A = false, B = false, C = false;
    double A_min_norm = 0.0;     // min |P direction| over samples (should be 1)
    double B_margin = 0.0;       // worst cap-crossing margin over planes
    double C_min_margin = 0.0;   // worst separation margin over sampled v
    std::vector<Vec3> C_failed_v;
    int v_count = 0;
};

namespace detail {

// Sound cap enclosure of the level set of v for the shipped bundle: the
// p-candidate caps, the polar caps, and (always) the T_i boundary caps; the
// paper's containment lemma backs the conservative inclusion.
inline CapFamily construction_level_enclosure(const Construction& con, const Vec3& v,
                                              double pad) {
    CapFamily F;
    const double tcap = chord_to_angle(con.params.r) + pad;
    for (const auto& a : con.family.centers) F.caps.push_back(Cap{a, tcap});
    for (const auto& p : level_candidates_p(v.normalized())) F.caps.push_back(Cap{p, pad});
    F.caps.push_back(Cap{Vec3::UnitZ(), pad});
    F.caps.push_back(Cap{-Vec3::UnitZ(), pad});
    return F;
}

} // namespace detail

inline ConditionsReport verify_conditions(const Construction& con, int plane_samples,
                                          int v_samples, std::uint64_t seed,
                                          double enclosure_pad = 0.02) {
    ConditionsReport rep;
    const ConstructionBundle cb = con.bundle_data();

    // (A): same-degree homogeneous components by construction; nonvanishing
    // because the third component is >= 1. Sample the direction oracle.
    {
        const SphereGrid g = SphereGrid::fibonacci(100000);
        double min_norm = 1e300;
        for (const auto& xi : g.nodes) min_norm = std::min(min_norm, cb.direction(xi).norm());
        rep.A_min_norm = min_norm;
        rep.A = min_norm > 0.999999;
    }

    // (B): every sampled great circle crosses the boundary circle of some
    // covering cap (level set of w = e3 contains every T_i).
    {
        const double cos_rho = std::cos(con.family.angular_radius());
        std::vector<Vec3> normals;
        const SphereGrid g = SphereGrid::fibonacci(std::max(8, plane_samples / 2));
        normals.insert(normals.end(), g.nodes.begin(), g.nodes.end());
        Rng rng(seed, 21);
        while (static_cast<int>(normals.size()) < plane_samples) {
            Vec3 nu(rng.normal(), rng.normal(), rng.normal());
            if (nu.norm() > 1e-9) normals.push_back(nu.normalized());
        }
        double worst = 1e300;
        for (const Vec3& nu : normals) {
            const Vec3 u1 = nu.unitOrthogonal();
            const Vec3 u2 = nu.cross(u1);
            double best = -1e300;
            for (const auto& a : con.family.centers) {
                const double amp = std::hypot(u1.dot(a), u2.dot(a));
                best = std::max(best, amp - cos_rho);
            }
            worst = std::min(worst, best);
        }
        rep.B_margin = worst;
        rep.B = worst > 0.0;
    }

    // (C): separation of the level-set enclosure from a rotated copy, with
    // B_v searched over {R_e o R} for e near (0,1,0) first, then outward.
    {
        std::vector<Vec3> vs = {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0, 1, 0),
                                Vec3(1, 1, 1).normalized(),
                                Vec3(0.05, 0.0, 1.0).normalized(),
                                Vec3(0.05, -0.03, 1.0).normalized()};
        Rng rng(seed, 23);
        while (static_cast<int>(vs.size()) < v_samples) {
            Vec3 v(rng.normal(), rng.normal(), rng.normal());
            if (v.norm() > 1e-9) vs.push_back(v.normalized());
        }
        // candidate B_v list: R_e o R with e sweeping outward from e2
        std::vector<Mat3> candidates;
        {
            std::vector<Vec3> es;
            es.push_back(Vec3(0, 1, 0));
            const SphereGrid eg = SphereGrid::fibonacci(256);
            std::vector<Vec3> sorted = eg.nodes;
            std::sort(sorted.begin(), sorted.end(), [](const Vec3& a, const Vec3& b) {
                return geodesic_distance(a, Vec3(0, 1, 0)) <
                       geodesic_distance(b, Vec3(0, 1, 0));
            });
            es.insert(es.end(), sorted.begin(), sorted.end());
            for (const auto& e : es)
                candidates.push_back(rotation_taking(Vec3(0, 1, 0), e) * con.rotation);
        }
        rep.C_min_margin = kPi;
        for (const Vec3& v : vs) {
            const CapFamily F = detail::construction_level_enclosure(con, v, enclosure_pad);
            const SeparationResult r = rotation_separation_search(F, candidates);
            if (!r.found) {
                rep.C_failed_v.push_back(v);
            } else {
                rep.C_min_margin = std::min(rep.C_min_margin, r.margin);
            }
        }
        rep.v_count = static_cast<int>(vs.size());
        rep.C = rep.C_failed_v.empty();
    }
    return rep;
}

} // namespace specdim
