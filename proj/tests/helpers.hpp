#pragma once

// Shared fixtures for the test suite: random hierarchical states built from
// per-pair orbital elements.

#include <array>
#include <cmath>
#include <random>

#include "fourbody/frames.hpp"
#include "fourbody/kepler.hpp"

namespace fourbody::testing {

struct OrbitElements {
    double a = 1.0;
    double e = 0.1;
    double inc = 0.3;    // inclination to the reference plane
    double Omega = 0.0;  // longitude of the ascending node
    double omega = 0.0;  // argument of pericenter
    double ell = 0.0;    // mean anomaly
};

inline Vec3 rotate_zxz(const Vec3& v, double Omega, double inc, double omega) {
    auto rot_z = [](const Vec3& u, double a) {
        return Vec3{u.x * std::cos(a) - u.y * std::sin(a),
                    u.x * std::sin(a) + u.y * std::cos(a), u.z};
    };
    auto rot_x = [](const Vec3& u, double a) {
        return Vec3{u.x, u.y * std::cos(a) - u.z * std::sin(a),
                    u.y * std::sin(a) + u.z * std::cos(a)};
    };
    return rot_z(rot_x(rot_z(v, omega), inc), Omega);
}

/// Build a Jacobi state from per-pair elliptic elements (q0 = 0, p0 = 0).
inline JacobiState jacobi_from_elements(const MassSet& ms,
                                        const std::array<OrbitElements, 3>& el) {
    JacobiState s;
    for (int j = 1; j <= 3; ++j) {
        const OrbitElements& o = el[j - 1];
        const EllipseElements ee(o.a, o.e, o.ell);
        const std::array<double, 4> ps = planar_state(ee, ms.mu[j], ms.M[j]);
        s.q[j] = rotate_zxz(Vec3{ps[0], ps[1], 0.0}, o.Omega, o.inc, o.omega);
        s.p[j] = rotate_zxz(Vec3{ps[2], ps[3], 0.0}, o.Omega, o.inc, o.omega);
    }
    return s;
}

/// Random well-separated state: generic inclinations and nodes, moderate
/// eccentricities, semimajor-axis ratios at most `ratio`.
inline JacobiState random_hierarchical(std::mt19937_64& rng, const MassSet& ms,
                                       double ratio = 0.15) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> ecc(0.05, 0.4);
    std::uniform_real_distribution<double> inc(0.15, 1.2);
    std::array<OrbitElements, 3> el;
    double a = 1.0;
    for (int j = 0; j < 3; ++j) {
        el[j].a = a;
        a /= ratio * (0.6 + 0.4 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
        el[j].e = ecc(rng);
        el[j].inc = inc(rng);
        el[j].Omega = ang(rng);
        el[j].omega = ang(rng);
        el[j].ell = ang(rng);
    }
    return jacobi_from_elements(ms, el);
}

inline MassSet default_masses() { return derive_masses(1.0, 0.6, 0.8, 0.5); }

}  // namespace fourbody::testing
