// Bundles over the sphere and homogeneous operator symbols: kernels via SVD,
// the Grassmannian sine metric, level sets, the 1-cone condition, k-wave-cone
// witnesses, rotation-separation searches, and the n/(k+1) certificate.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "specdim/errors.hpp"
#include "specdim/polynomial.hpp"
#include "specdim/rng.hpp"
#include "specdim/sphere.hpp"

namespace specdim {

// ---------------------------------------------------------------------------
// Subspaces with orthonormal bases.

struct Subspace {
    Eigen::MatrixXd basis; // ambient x d, orthonormal columns

    int ambient() const { return static_cast<int>(basis.rows()); }
    int dim() const { return static_cast<int>(basis.cols()); }

    static Subspace span_of(const Eigen::MatrixXd& vectors, double tol = 1e-12) {
        if (vectors.cols() == 0) return Subspace{Eigen::MatrixXd(vectors.rows(), 0)};
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
        const auto& s = svd.singularValues();
        int d = 0;
        for (int i = 0; i < s.size(); ++i)
            if (s[i] > tol * s[0]) ++d;
        return Subspace{svd.matrixU().leftCols(d)};
    }

    static Subspace full(int ambient) {
        return Subspace{Eigen::MatrixXd::Identity(ambient, ambient)};
    }
    static Subspace zero(int ambient) { return Subspace{Eigen::MatrixXd(ambient, 0)}; }
    static Subspace line(const Eigen::VectorXd& v) {
        Eigen::MatrixXd b(v.size(), 1);
        b.col(0) = v.normalized();
        return Subspace{b};
    }
};

// Orthonormal basis of the right null space of M, thresholded at
// tol * (largest singular value).
inline Subspace kernel_subspace(const Eigen::MatrixXd& M, double tol = 1e-10) {
    if (tol <= 0) throw ContractError("kernel_subspace: tol > 0 required");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > tol * smax) ++rank;
    if (smax == 0.0) rank = 0; // zero matrix: full kernel
    return Subspace{svd.matrixV().rightCols(M.cols() - rank)};
}

// sup_{z in V, |z|=1} dist(z, W) = sine of the largest principal angle.
inline double grassmann_distance(const Subspace& V, const Subspace& W) {
    if (V.ambient() != W.ambient())
        throw ContractError("grassmann_distance: ambient dimension mismatch");
    if (V.dim() != W.dim())
        throw ContractError("grassmann_distance: subspaces must share dimension");
    if (V.dim() == 0) return 0.0;
    const Eigen::MatrixXd residual =
        V.basis - W.basis * (W.basis.transpose() * V.basis);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
    return std::min(1.0, svd.singularValues()[0]);
}

// ---------------------------------------------------------------------------
// Bundles: line bundles carry a unit-direction oracle (log-magnitude kept
// separately so enormous polynomial scales stay representable).

struct LineBundle {
    int dim = 3;
    // unit direction of P(xi), or the zero vector where P vanishes
    std::function<Vec3(const Vec3&)> direction;
    // optional: log10 |P(xi)| for diagnostics
    std::function<double(const Vec3&)> log10_magnitude;

    Subspace subspace_at(const Vec3& xi) const {
        const Vec3 d = direction(xi);
        if (d.squaredNorm() < 0.5) return Subspace::zero(3);
        Eigen::MatrixXd b(3, 1);
        b.col(0) = d;
        return Subspace{b};
    }
};

struct PolynomialVectorField {
    int dim = 3;
    std::vector<Polynomial> components;

    PolynomialVectorField() = default;
    PolynomialVectorField(int n, std::vector<Polynomial> comps)
        : dim(n), components(std::move(comps)) {
        for (const auto& c : components)
            if (c.nvars != n)
                throw ContractError("PolynomialVectorField: component arity mismatch");
    }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const {
        Eigen::VectorXd out(components.size());
        std::vector<double> xv(x.data(), x.data() + x.size());
        for (std::size_t i = 0; i < components.size(); ++i)
            out[static_cast<Eigen::Index>(i)] = components[i].eval(xv);
        return out;
    }

    bool is_homogeneous(int* degree = nullptr) const {
        int d0 = -1;
        for (const auto& c : components) {
            int d;
            if (!c.is_homogeneous(&d)) return false;
            if (d >= 0) {
                if (d0 >= 0 && d != d0) return false;
                d0 = d;
            }
        }
        if (degree) *degree = d0;
        return true;
    }

    // flat compiled form of the three components for allocation-free eval
    struct Compiled {
        struct Term {
            int e[3];
            double c;
        };
        std::array<std::vector<Term>, 3> comps;

        Vec3 eval(const Vec3& x) const {
            Vec3 out;
            for (int i = 0; i < 3; ++i) {
                double acc = 0.0;
                for (const auto& t : comps[static_cast<std::size_t>(i)]) {
                    double v = t.c;
                    for (int k = 0; k < t.e[0]; ++k) v *= x.x();
                    for (int k = 0; k < t.e[1]; ++k) v *= x.y();
                    for (int k = 0; k < t.e[2]; ++k) v *= x.z();
                    acc += v;
                }
                out[i] = acc;
            }
            return out;
        }
    };

    Compiled compile() const {
        if (dim != 3 || components.size() != 3)
            throw ContractError("PolynomialVectorField::compile: needs three 3-variable components");
        Compiled cp;
        for (std::size_t i = 0; i < 3; ++i)
            for (const auto& [m, c] : components[i].terms)
                cp.comps[i].push_back(Compiled::Term{{m[0], m[1], m[2]}, c});
        return cp;
    }

    LineBundle line_bundle(double vanish_tol = 0.0) const {
        LineBundle b;
        b.dim = dim;
        const Compiled cp = compile();
        b.direction = [cp, vanish_tol](const Vec3& xi) -> Vec3 {
            const Vec3 p = cp.eval(xi);
            const double n = p.norm();
            if (n <= vanish_tol) return Vec3::Zero();
            return p / n;
        };
        b.log10_magnitude = [cp](const Vec3& xi) {
            return std::log10(std::max(1e-300, cp.eval(xi).norm()));
        };
        return b;
    }

    // span{(x^2, y^2, z^2)}: the model bundle of the construction section
    static PolynomialVectorField squares() {
        std::vector<Polynomial> comps;
        for (int i = 0; i < 3; ++i) comps.push_back(Polynomial::variable(3, i, 2));
        return PolynomialVectorField(3, std::move(comps));
    }
};

// ---------------------------------------------------------------------------
// Constant-coefficient homogeneous operators and their symbols.

struct PDOperator {
    int order = 1;
    int out_rows = 0, in_cols = 0;
    std::vector<std::pair<MultiIndex, Eigen::MatrixXd>> terms;

    // Factored evaluation path for operators whose expanded coefficients are
    // not representable. Evaluates at xi normalized to the unit sphere.
    std::function<Eigen::MatrixXd(const Vec3&)> factored_symbol;

    // Optional certified zero structure for wave-cone sweeps: the symbol
    // applied to `zero_caps_w` vanishes exactly on the boundary circles of
    // these caps (chord radius), plus at `zero_points`.
    CapFamily zero_caps;
    Vec3 zero_caps_w = Vec3::Zero();
    std::vector<Vec3> zero_points;

    bool factored() const { return static_cast<bool>(factored_symbol); }

    int spatial_dim() const {
        if (factored()) return 3;
        return terms.empty() ? 0 : static_cast<int>(terms.front().first.size());
    }

    static PDOperator divergence(int n) {
        PDOperator op;
        op.order = 1;
        op.out_rows = 1;
        op.in_cols = n;
        for (int i = 0; i < n; ++i) {
            MultiIndex alpha(static_cast<std::size_t>(n), 0);
            alpha[static_cast<std::size_t>(i)] = 1;
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(1, n);
            A(0, i) = 1.0;
            op.terms.emplace_back(std::move(alpha), std::move(A));
        }
        return op;
    }
};

inline Eigen::MatrixXd symbol(const PDOperator& op, const Eigen::VectorXd& xi) {
    if (op.factored()) {
        if (xi.size() != 3) throw ContractError("symbol: factored operators live on R^3");
        return op.factored_symbol(Vec3(xi[0], xi[1], xi[2]).normalized());
    }
    if (op.terms.empty()) throw ContractError("symbol: operator has no terms");
    if (static_cast<int>(op.terms.front().first.size()) != xi.size())
        throw ContractError("symbol: point dimension mismatch");
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(op.out_rows, op.in_cols);
    for (const auto& [alpha, A] : op.terms) {
        double mono = 1.0;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (int k = 0; k < alpha[i]; ++k) mono *= xi[static_cast<Eigen::Index>(i)];
        acc += mono * A;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Level sets of line bundles: {xi in S^2 : v in span P(xi)}.

struct SpherePointSet {
    std::vector<Vec3> points;
    double resolution = 0.0;
};

namespace detail {

inline double parallel_residual(const LineBundle& B, const Vec3& xi, const Vec3& vhat) {
    const Vec3 d = B.direction(xi);
    if (d.squaredNorm() < 0.5) return 2.0; // P vanished: span{0} contains no v != 0
    return (d - d.dot(vhat) * vhat).norm();
}

// Tangent-plane gradient descent with a golden line search; handles the
// quartic-flat wells that defeat plain pattern search.
inline Vec3 refine_on_sphere(const LineBundle& B, Vec3 p, const Vec3& vhat, double h) {
    auto f = [&](const Vec3& q) { return parallel_residual(B, q, vhat); };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int iter = 0; iter < 40; ++iter) {
        const Vec3 t1 = p.unitOrthogonal();
        const Vec3 t2 = p.cross(t1);
        const double fd = std::max(h / 256.0, 1e-7);
        const double g1 = f((p + fd * t1).normalized()) - f((p - fd * t1).normalized());
        const double g2 = f((p + fd * t2).normalized()) - f((p - fd * t2).normalized());
        Vec3 dir = -(g1 * t1 + g2 * t2);
        if (dir.norm() < 1e-300) break;
        dir.normalize();
        // golden minimization of f along the geodesic ray, range [0, 4h]
        double a = 0.0, b = 4.0 * h;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f((p + x1 * dir).normalized()), f2 = f((p + x2 * dir).normalized());
        for (int it = 0; it < 26; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = f((p + x1 * dir).normalized());
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = f((p + x2 * dir).normalized());
            }
        }
        const double move = 0.5 * (a + b);
        const Vec3 next = (p + move * dir).normalized();
        if (f(next) < f(p)) p = next;
        if (move < h / 40.0) break;
    }
    return p;
}

} // namespace detail

inline SpherePointSet level_set(const LineBundle& bundle, const Vec3& v,
                                const SphereGrid& grid, double tol = 1e-3) {
    if (v.norm() == 0.0) throw ContractError("level_set: v must be nonzero");
    const Vec3 vhat = v.normalized();
    SpherePointSet out;
    out.resolution = grid.resolution;
    const double h = grid.resolution;
    // loose candidate net (covers level points whose nearest node sits at the
    // covering radius), clustered before refinement
    const double loose = std::max(tol, 6.0 * h);
    std::vector<Vec3> candidates;
    for (const Vec3& node : grid.nodes)
        if (detail::parallel_residual(bundle, node, vhat) < loose) candidates.push_back(node);

    auto chord = [](double angle) { return 2.0 * std::sin(0.5 * angle); };
    if (candidates.size() > grid.nodes.size() / 5) {
        // the level set fills a large region; report the strict members at
        // grid resolution without pointwise refinement
        const double c2 = chord(2.0 * h) * chord(2.0 * h);
        for (const Vec3& node : candidates) {
            if (detail::parallel_residual(bundle, node, vhat) >= tol) continue;
            bool dup = false;
            for (const Vec3& r : out.points)
                if ((r - node).squaredNorm() < c2) {
                    dup = true;
                    break;
                }
            if (!dup) out.points.push_back(node);
        }
        return out;
    }

    std::vector<Vec3> reps;
    const double cluster2 = chord(2.0 * h) * chord(2.0 * h);
    for (const Vec3& node : candidates) {
        bool clustered = false;
        for (const Vec3& r : reps)
            if ((r - node).squaredNorm() < cluster2) {
                clustered = true;
                break;
            }
        if (!clustered) reps.push_back(node);
    }
    const double dedup2 = chord(0.75 * h) * chord(0.75 * h);
    for (const Vec3& p : reps) {
        const Vec3 q = detail::refine_on_sphere(bundle, p, vhat, 4.0 * h);
        if (detail::parallel_residual(bundle, q, vhat) >= tol) continue;
        bool dup = false;
        for (const Vec3& existing : out.points)
            if ((existing - q).squaredNorm() < dedup2) {
                dup = true;
                break;
            }
        if (!dup) out.points.push_back(q);
    }
    return out;
}

// Greedy cap cover of a point set, radius = 2 * resolution by default.
inline CapFamily enclose_in_caps(const SpherePointSet& pts, double radius = -1.0) {
    if (radius <= 0) radius = 2.0 * pts.resolution;
    CapFamily F;
    for (const Vec3& p : pts.points) {
        bool covered = false;
        for (const auto& c : F.caps)
            if (geodesic_distance(p, c.center) <= 0.5 * radius) {
                covered = true;
                break;
            }
        if (!covered) F.caps.push_back(Cap{p, radius});
    }
    return F;
}

// ---------------------------------------------------------------------------
// 1-cone condition: intersection of all sampled fibers is {0}.

struct OneConeResult {
    bool trivial = false;
    std::vector<int> certificate_nodes; // indices whose fibers already intersect to {0}
    Eigen::VectorXd witness;            // surviving common direction when !trivial
};

inline OneConeResult one_cone_condition(
    const std::function<Subspace(const Vec3&)>& bundle, const SphereGrid& grid,
    double tol = 1e-10) {
    OneConeResult res;
    Eigen::MatrixXd C; // running intersection basis
    bool first = true;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const Subspace S = bundle(grid.nodes[i]);
        if (first) {
            C = S.basis;
            res.certificate_nodes.push_back(static_cast<int>(i));
            first = false;
        } else {
            // directions a with C a in span(S): kernel of (I - S S^T) C
            const Eigen::MatrixXd R = C - S.basis * (S.basis.transpose() * C);
            const Subspace K = kernel_subspace(R, tol);
            if (K.dim() == static_cast<int>(C.cols())) continue; // no reduction
            res.certificate_nodes.push_back(static_cast<int>(i));
            if (K.dim() == 0) {
                C.resize(C.rows(), 0);
            } else {
                C = Subspace::span_of(C * K.basis).basis;
            }
        }
        if (C.cols() == 0) {
            res.trivial = true;
            return res;
        }
    }
    res.trivial = false;
    res.witness = C.col(0);
    return res;
}

// ---------------------------------------------------------------------------
// k-wave-cone witness.

struct WaveConeResult {
    enum class Status { verified, refuted, indeterminate };
    Status status = Status::indeterminate;
    Eigen::MatrixXd refuting_plane;       // n x k basis when refuted
    double refuting_min_norm = 0.0;
    int planes_checked = 0;
    std::vector<int> indeterminate_planes;
};

namespace detail {

// min over the unit circle of V of |A[xi] w| / scale, by sweep + golden refine
template <typename F>
double circle_min(F&& f, int coarse = 720) {
    double best = 1e300;
    double tbest = 0.0;
    for (int i = 0; i < coarse; ++i) {
        const double t = kPi * i / coarse; // antipodal symmetry: [0, pi)
        const double v = f(t);
        if (v < best) {
            best = v;
            tbest = t;
        }
    }
    double a = tbest - kPi / coarse, b = tbest + kPi / coarse;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return std::min({best, fc, fd});
}

} // namespace detail

inline WaveConeResult wave_cone_witness(const PDOperator& op, int k,
                                        const Eigen::VectorXd& w, int plane_samples,
                                        std::uint64_t seed, double tol = 1e-8) {
    const int n = op.spatial_dim();
    if (w.norm() == 0.0) throw ContractError("wave_cone_witness: w must be nonzero");
    if (k < 1 || k >= n) throw ContractError("wave_cone_witness: need 1 <= k < n");

    WaveConeResult res;
    Rng rng(seed);

    auto sym_w_norm = [&](const Eigen::VectorXd& xi) {
        const Eigen::MatrixXd A = symbol(op, xi);
        const double scale = A.norm();
        return scale > 0 ? (A * w).norm() / scale : 0.0;
    };

    std::vector<Eigen::MatrixXd> planes;
    for (int s = 0; s < plane_samples; ++s) {
        Eigen::MatrixXd G(n, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) G(i, j) = rng.normal();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
        planes.push_back(Eigen::MatrixXd(qr.householderQ()).leftCols(k));
    }
    // structured sweep: planes through each coordinate axis (k = 2 only)
    if (k == 2 && n == 3) {
        const int sweep = std::max(8, plane_samples / 4);
        for (int axis = 0; axis < 3; ++axis) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(3);
            a[axis] = 1.0;
            for (int i = 0; i < sweep; ++i) {
                const double th = kPi * i / sweep;
                Eigen::VectorXd b = Eigen::VectorXd::Zero(3);
                b[(axis + 1) % 3] = std::cos(th);
                b[(axis + 2) % 3] = std::sin(th);
                Eigen::MatrixXd P(3, 2);
                P.col(0) = a;
                P.col(1) = b;
                planes.push_back(P);
            }
        }
    }

    for (const auto& V : planes) {
        ++res.planes_checked;
        bool plane_ok = false;
        if (k == 1) {
            const double mn = sym_w_norm(V.col(0));
            if (mn < tol) {
                plane_ok = true;
            } else if (mn > 100.0 * tol) {
                res.status = WaveConeResult::Status::refuted;
                res.refuting_plane = V;
                res.refuting_min_norm = mn;
                return res;
            } else {
                res.indeterminate_planes.push_back(res.planes_checked - 1);
                continue;
            }
        } else if (k == 2 && n == 3) {
            const Vec3 u1 = V.col(0), u2 = V.col(1);
            // certified cap-boundary crossing when the zero structure is known
            const Vec3 w3(w[0], w[1], w[2]);
            const bool cert_applies =
                !op.zero_caps.caps.empty() && op.zero_caps_w.norm() > 0 &&
                op.zero_caps_w.normalized().cross(w3.normalized()).norm() < 1e-12;
            if (cert_applies) {
                for (const auto& cap : op.zero_caps.caps) {
                    // the sweep <C(t), a> has amplitude |proj of a onto V|;
                    // it crosses the boundary circle iff the amplitude
                    // exceeds cos(angular radius)
                    const double amp = std::hypot(u1.dot(cap.center), u2.dot(cap.center));
                    if (amp > std::cos(cap.radius) + 1e-12) {
                        plane_ok = true;
                        break;
                    }
                }
            }
            if (!plane_ok) {
                const double mn = detail::circle_min([&](double t) {
                    return sym_w_norm(std::cos(t) * u1 + std::sin(t) * u2);
                });
                if (mn < tol)
                    plane_ok = true;
                else if (mn > 100.0 * tol) {
                    res.status = WaveConeResult::Status::refuted;
                    res.refuting_plane = V;
                    res.refuting_min_norm = mn;
                    return res;
                } else {
                    res.indeterminate_planes.push_back(res.planes_checked - 1);
                    continue;
                }
            }
        } else {
            // higher k: minimum over a sampled unit sphere of V
            double mn = 1e300;
            Rng local(seed ^ 0x5eedULL, static_cast<std::uint64_t>(res.planes_checked));
            for (int s = 0; s < 4096; ++s) {
                Eigen::VectorXd c(k);
                for (int j = 0; j < k; ++j) c[j] = local.normal();
                c.normalize();
                mn = std::min(mn, sym_w_norm(V * c));
            }
            if (mn < tol)
                plane_ok = true;
            else if (mn > 100.0 * tol) {
                res.status = WaveConeResult::Status::refuted;
                res.refuting_plane = V;
                res.refuting_min_norm = mn;
                return res;
            } else {
                res.indeterminate_planes.push_back(res.planes_checked - 1);
                continue;
            }
        }
        if (!plane_ok) {
            res.indeterminate_planes.push_back(res.planes_checked - 1);
        }
    }
    res.status = res.indeterminate_planes.empty() ? WaveConeResult::Status::verified
                                                  : WaveConeResult::Status::indeterminate;
    return res;
}

// ---------------------------------------------------------------------------
// Rotation separation search over a candidate list.

struct SeparationResult {
    bool found = false;
    int candidate_index = -1;
    Mat3 rotation = Mat3::Identity();
    double margin = -kPi;      // margin of the returned rotation
    double best_margin = -kPi; // best margin over all candidates
};

// Margin of F against R(F); computation stops early once the margin falls
// below `floor` (the returned value is then an upper bound below floor).
inline double separation_margin(const CapFamily& F, const Mat3& R,
                                double floor = -std::numeric_limits<double>::infinity()) {
    if (F.caps.empty()) return kPi; // nothing to separate
    double margin = kPi;
    std::vector<Vec3> rotated;
    rotated.reserve(F.caps.size());
    for (const auto& cj : F.caps) rotated.push_back(R * cj.center);
    for (const auto& ci : F.caps) {
        for (std::size_t j = 0; j < rotated.size(); ++j) {
            const double d =
                geodesic_distance(ci.center, rotated[j]) - ci.radius - F.caps[j].radius;
            margin = std::min(margin, d);
        }
        if (margin < floor) return margin;
    }
    return margin;
}

inline SeparationResult rotation_separation_search(const CapFamily& F,
                                                   const std::vector<Mat3>& candidates) {
    if (candidates.empty())
        throw ContractError("rotation_separation_search: empty candidate list");
    SeparationResult res;
    const double floor = F.caps.size() > 48 ? 0.0 : -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double m = separation_margin(F, candidates[i], floor);
        if (m > res.best_margin) {
            res.best_margin = m;
            if (!res.found) {
                res.rotation = candidates[i];
                res.candidate_index = static_cast<int>(i);
                res.margin = m;
            }
        }
        if (m > 0.0 && !res.found) {
            res.found = true;
            res.rotation = candidates[i];
            res.candidate_index = static_cast<int>(i);
            res.margin = m;
            break;
        }
    }
    return res;
}

// Deterministic default candidate rotations, optionally extended by seeded
// random ones.
inline std::vector<Mat3> default_rotation_candidates(std::uint64_t seed = 0,
                                                     int random_extra = 32) {
    std::vector<Vec3> axes = {
        Vec3(1, 0, 0), Vec3(0, 1, 0),  Vec3(0, 0, 1),
        Vec3(1, 1, 1).normalized(),    Vec3(1, -1, 0).normalized(),
        Vec3(1, 0, -1).normalized(),   Vec3(0, 1, -1).normalized(),
        Vec3(1, 1, -1).normalized()};
    std::vector<double> angles = {kPi / 2, kPi / 4, kPi / 3, 2 * kPi / 3, kPi / 6, 3 * kPi / 4, kPi};
    std::vector<Mat3> out;
    for (const auto& ax : axes)
        for (double an : angles) out.push_back(rotation_about(ax, an));
    Rng rng(seed, 77);
    for (int i = 0; i < random_extra; ++i) {
        Vec3 ax(rng.normal(), rng.normal(), rng.normal());
        out.push_back(rotation_about(ax.normalized(), rng.uniform(0.3, kPi)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Theorem certificate: dim >= n/(k+1) via level-set separation for sampled v.

struct BoundCertificate {
    double bound = 0.0;
    bool certified = false;
    int v_count = 0;
    std::vector<Vec3> failed_v;
    double min_margin = kPi;
    std::string note; // conditional on the cited reduction steps
};

namespace detail {

// k >= 2: emptiness of F int R1(F) int ... int Rk(F) at grid resolution.
inline double common_intersection_margin(const CapFamily& F, const std::vector<Mat3>& rots,
                                         const SphereGrid& grid) {
    double worst = kPi;
    for (const Vec3& node : grid.nodes) {
        double max_dist = 0.0; // distance from node to the farthest family
        for (std::size_t j = 0; j <= rots.size(); ++j) {
            const Mat3 R = j == 0 ? Mat3::Identity() : rots[j - 1];
            double dmin = kPi;
            for (const auto& c : F.caps)
                dmin = std::min(dmin, geodesic_distance(node, R * c.center) - c.radius);
            max_dist = std::max(max_dist, dmin);
        }
        worst = std::min(worst, max_dist);
    }
    return worst; // > 0: no grid node lies in every family
}

} // namespace detail

inline BoundCertificate certify_dimension_bound(const LineBundle& bundle, int k,
                                                const SphereGrid& grid, int v_samples,
                                                std::uint64_t seed, double level_tol = 1e-3) {
    if (k < 1) throw ContractError("certify_dimension_bound: k >= 1 required");
    BoundCertificate cert;
    cert.bound = 3.0 / (k + 1.0);
    const auto candidates = default_rotation_candidates(seed);

    std::vector<Vec3> vs = {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1),
                            Vec3(1, 1, 1).normalized()};
    Rng rng(seed, 3);
    while (static_cast<int>(vs.size()) < v_samples) {
        Vec3 v(rng.normal(), rng.normal(), rng.normal());
        if (v.norm() > 1e-9) vs.push_back(v.normalized());
    }

    for (const Vec3& v : vs) {
        const SpherePointSet L = level_set(bundle, v, grid, level_tol);
        if (L.points.empty()) continue; // empty level set separates trivially
        const CapFamily F = enclose_in_caps(L);
        if (k == 1) {
            const SeparationResult r = rotation_separation_search(F, candidates);
            if (!r.found) {
                cert.failed_v.push_back(v);
            } else {
                cert.min_margin = std::min(cert.min_margin, r.margin);
            }
        } else {
            // greedy: pick k rotations by best pairwise margin, then check the
            // common intersection on the grid
            std::vector<Mat3> rots;
            for (int j = 0; j < k; ++j) {
                const SeparationResult r = rotation_separation_search(F, candidates);
                rots.push_back(r.found ? r.rotation : candidates[static_cast<std::size_t>(j)]);
            }
            const double m = detail::common_intersection_margin(F, rots, grid);
            if (m <= 0)
                cert.failed_v.push_back(v);
            else
                cert.min_margin = std::min(cert.min_margin, m);
        }
    }
    cert.v_count = static_cast<int>(vs.size());
    cert.certified = cert.failed_v.empty();
    cert.note = "bound conditional on the cited tangent-measure reduction";
    return cert;
}

} // namespace specdim
