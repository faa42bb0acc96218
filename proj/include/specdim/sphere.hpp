// S^2 utilities: grids, caps, arcs of small circles, rotations.
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "specdim/errors.hpp"
#include "specdim/measures.hpp" // kPi

namespace specdim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline double geodesic_distance(const Vec3& a, const Vec3& b) {
    // atan2 form is stable near 0 and pi
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline Mat3 rotation_about(const Vec3& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

// Rotation taking `from` to `to` about from x to (the paper's R_e family).
inline Mat3 rotation_taking(const Vec3& from, const Vec3& to) {
    const Vec3 f = from.normalized(), t = to.normalized();
    const Vec3 ax = f.cross(t);
    const double s = ax.norm(), c = f.dot(t);
    if (s < 1e-15) {
        if (c > 0) return Mat3::Identity();
        // antipodal: rotate by pi about any orthogonal axis
        Vec3 o = f.unitOrthogonal();
        return rotation_about(o, kPi);
    }
    return rotation_about(ax / s, std::atan2(s, c));
}

// Coordinate cycle (x,y,z) -> (z,x,y): the composition of a 90-degree
// rotation about (1,0,0) with a 90-degree rotation about (0,0,1).
inline Mat3 coordinate_cycle_rotation() {
    Mat3 R;
    R << 0, 0, 1,
         1, 0, 0,
         0, 1, 0;
    return R;
}

// ---------------------------------------------------------------------------
// Fibonacci sphere grid.

struct SphereGrid {
    std::vector<Vec3> nodes;
    double resolution = 0.0; // max geodesic distance to the nearest node

    static SphereGrid fibonacci(int count) {
        if (count < 8) throw ContractError("SphereGrid: need at least 8 nodes");
        SphereGrid g;
        g.nodes.reserve(static_cast<std::size_t>(count));
        const double golden = kPi * (std::sqrt(5.0) - 1.0);
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double th = golden * i;
            g.nodes.emplace_back(r * std::cos(th), r * std::sin(th), z);
        }
        // covering radius of the Fibonacci grid is below this bound
        g.resolution = 2.6 / std::sqrt(static_cast<double>(count));
        return g;
    }
};

// ---------------------------------------------------------------------------
// Spherical caps (angular radius) and cap families.

struct Cap {
    Vec3 center = Vec3::UnitZ();
    double radius = 0.0; // angular
};

struct CapFamily {
    std::vector<Cap> caps;

    bool covers(const Vec3& p, double slack = 0.0) const {
        for (const auto& c : caps)
            if (geodesic_distance(p, c.center) <= c.radius + slack) return true;
        return false;
    }
};

// Euclidean chord radius -> angular radius for centers on the sphere.
inline double chord_to_angle(double chord_radius) {
    const double x = std::min(1.0, chord_radius / 2.0);
    return 2.0 * std::asin(x);
}

// ---------------------------------------------------------------------------
// Arcs of circles on the sphere: points cos(rho) m + sin(rho) (cos t u + sin t v)
// for t in [t0, t1]. rho = pi/2 gives great-circle arcs.

struct SphereArc {
    Vec3 axis = Vec3::UnitZ(); // m
    double polar = kPi / 2;    // rho: angular radius about the axis
    Vec3 u = Vec3::UnitX(), v = Vec3::UnitY();
    double t0 = 0.0, t1 = 2 * kPi;

    static SphereArc circle(const Vec3& axis, double polar_angle, double from = 0.0,
                            double to = 2 * kPi) {
        SphereArc a;
        a.axis = axis.normalized();
        a.u = a.axis.unitOrthogonal();
        a.v = a.axis.cross(a.u);
        a.polar = polar_angle;
        a.t0 = from;
        a.t1 = to;
        return a;
    }

    Vec3 point(double t) const {
        return std::cos(polar) * axis + std::sin(polar) * (std::cos(t) * u + std::sin(t) * v);
    }

    double length() const { return (t1 - t0) * std::sin(polar); }

    SphereArc antipodal() const {
        SphereArc a = *this;
        a.axis = -axis;
        a.u = -u; // keeps point(t) = -original.point(t)
        a.v = -v;
        return a;
    }

    SphereArc rotated(const Mat3& R) const {
        SphereArc a = *this;
        a.axis = R * axis;
        a.u = R * u;
        a.v = R * v;
        return a;
    }

    std::vector<Vec3> sample(double max_spacing) const {
        const double len = std::max(1e-12, length());
        const int n = std::max(2, static_cast<int>(std::ceil(len / max_spacing)) + 1);
        std::vector<Vec3> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            pts.push_back(point(t0 + (t1 - t0) * i / (n - 1)));
        return pts;
    }

    // Range of the linear functional <point(t), w> over the arc: the
    // functional is cos(rho)<m,w> + sin(rho) A cos(t - phase).
    void functional_range(const Vec3& w, double& lo, double& hi) const {
        const double c0 = std::cos(polar) * axis.dot(w);
        const double au = std::sin(polar) * u.dot(w);
        const double av = std::sin(polar) * v.dot(w);
        const double amp = std::hypot(au, av);
        if (amp < 1e-300) {
            lo = hi = c0;
            return;
        }
        const double phase = std::atan2(av, au);
        // extremes of cos(theta) over theta in [t0-phase, t1-phase]
        auto contains_mod = [](double a, double b, double target) {
            const double k = std::ceil((a - target) / (2 * kPi));
            return target + 2 * kPi * k <= b;
        };
        const double a = t0 - phase, b = t1 - phase;
        double cmax = std::max(std::cos(a), std::cos(b));
        double cmin = std::min(std::cos(a), std::cos(b));
        if (contains_mod(a, b, 0.0)) cmax = 1.0;
        if (contains_mod(a, b, kPi)) cmin = -1.0;
        lo = c0 + amp * cmin;
        hi = c0 + amp * cmax;
    }
};

} // namespace specdim
