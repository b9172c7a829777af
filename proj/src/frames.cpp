#include "fourbody/frames.hpp"

#include <algorithm>
#include <cmath>

#include "fourbody/errors.hpp"
#include "fourbody/kepler.hpp"

namespace fourbody {

namespace {

const Vec3 k1{1.0, 0.0, 0.0};
const Vec3 k3{0.0, 0.0, 1.0};

// Relative node-degeneracy tolerance: the chart boundary must fail loudly.
constexpr double kNodeTol = 1e-9;

}  // namespace

MassSet derive_masses(double m0, double m1, double m2, double m3, int nmax) {
    if (!(m0 > 0.0 && m1 > 0.0 && m2 > 0.0 && m3 > 0.0))
        throw DomainError("derive_masses: all masses must be positive");
    if (nmax < 2) throw DomainError("derive_masses: nmax must be >= 2");
    MassSet ms;
    ms.m = {m0, m1, m2, m3};
    ms.M[0] = m0;
    for (int j = 1; j < 4; ++j) ms.M[j] = ms.M[j - 1] + ms.m[j];
    for (int j = 1; j < 4; ++j) ms.mu[j] = ms.M[j - 1] * ms.m[j] / ms.M[j];
    ms.nmax = nmax;
    const double s01 = ms.sigma(0, 1), s11 = ms.sigma(1, 1);
    const double s02 = ms.sigma(0, 2), s12 = ms.sigma(1, 2), s22 = ms.sigma(2, 2);
    for (int n = 2; n <= nmax; ++n) {
        if (n == 2) {
            // mass fractions sum to one; keep the quadrupole coefficient exact
            ms.sigma_tilde1.push_back(1.0);
            ms.sigma_tilde2.push_back(1.0);
            continue;
        }
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        ms.sigma_tilde1.push_back(std::pow(s01, n - 1) + sgn * std::pow(s11, n - 1));
        ms.sigma_tilde2.push_back(std::pow(s02 + s12, n - 1) + sgn * std::pow(s22, n - 1));
    }
    return ms;
}

JacobiState cartesian_to_jacobi(const CartesianState& s, const MassSet& ms) {
    const double s01 = ms.sigma(0, 1), s11 = ms.sigma(1, 1);
    const double s02 = ms.sigma(0, 2), s12 = ms.sigma(1, 2), s22 = ms.sigma(2, 2);
    JacobiState j;
    j.q[0] = s.x[0];
    j.q[1] = s.x[1] - s.x[0];
    j.q[2] = s.x[2] - s01 * s.x[0] - s11 * s.x[1];
    j.q[3] = s.x[3] - s02 * s.x[0] - s12 * s.x[1] - s22 * s.x[2];
    j.p[0] = s.y[0] + s.y[1] + s.y[2] + s.y[3];
    j.p[1] = s.y[1] + s11 * (s.y[2] + s.y[3]);
    j.p[2] = s.y[2] + s22 * s.y[3];
    j.p[3] = s.y[3];
    return j;
}

CartesianState jacobi_to_cartesian(const JacobiState& s, const MassSet& ms) {
    const double s01 = ms.sigma(0, 1), s11 = ms.sigma(1, 1);
    const double s02 = ms.sigma(0, 2), s12 = ms.sigma(1, 2), s22 = ms.sigma(2, 2);
    CartesianState c;
    c.x[0] = s.q[0];
    c.x[1] = s.q[0] + s.q[1];
    c.x[2] = s01 * c.x[0] + s11 * c.x[1] + s.q[2];
    c.x[3] = s02 * c.x[0] + s12 * c.x[1] + s22 * c.x[2] + s.q[3];
    c.y[0] = s.p[0] - s.p[1] - s01 * s.p[2] - s02 * s.p[3];
    c.y[1] = s.p[1] - s11 * s.p[2] - s12 * s.p[3];
    c.y[2] = s.p[2] - s22 * s.p[3];
    c.y[3] = s.p[3];
    return c;
}

DepritState jacobi_to_deprit(const JacobiState& s, const MassSet& ms) {
    std::array<Vec3, 3> C;
    std::array<double, 3> a, e, L, Gamma;
    std::array<Vec3, 3> evec;
    for (int j = 0; j < 3; ++j) {
        const Vec3& q = s.q[j + 1];
        const Vec3& p = s.p[j + 1];
        const double mu = ms.mu[j + 1], M = ms.M[j + 1];
        const double r = norm(q);
        if (!(r > 0.0)) throw DomainError("jacobi_to_deprit: zero separation");
        const double energy = dot(p, p) / (2.0 * mu) - mu * M / r;
        if (!(energy < 0.0)) throw NonElliptic("jacobi_to_deprit: non-negative two-body energy");
        a[j] = -mu * M / (2.0 * energy);
        L[j] = mu * std::sqrt(M * a[j]);
        C[j] = cross(q, p);
        Gamma[j] = norm(C[j]);
        if (!(Gamma[j] > 0.0))
            throw DomainError("jacobi_to_deprit: rectilinear orbit (zero angular momentum)");
        const double ratio = std::min(1.0, Gamma[j] / L[j]);
        e[j] = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
        evec[j] = cross(p, C[j]) / (mu * mu * M) - q / r;
        if (!(e[j] > 0.0 && e[j] < 1.0))
            throw DomainError("jacobi_to_deprit: eccentricity outside (0,1)");
    }

    const Vec3 C12 = C[0] + C[1];
    const Vec3 Ctot = C12 + C[2];
    const Vec3 nu2 = cross(C[0], C[1]);
    const Vec3 nu3 = cross(C12, C[2]);
    const Vec3 nu4 = cross(k3, Ctot);
    if (norm(nu2) < kNodeTol * Gamma[0] * Gamma[1])
        throw DegenerateNode("jacobi_to_deprit: node C1 x C2 degenerate");
    if (norm(nu3) < kNodeTol * norm(C12) * Gamma[2])
        throw DegenerateNode("jacobi_to_deprit: node (C1+C2) x C3 degenerate");
    if (norm(nu4) < kNodeTol * norm(Ctot))
        throw DegenerateNode("jacobi_to_deprit: node k3 x C degenerate");

    DepritState d;
    for (int j = 0; j < 3; ++j) {
        const Vec3& q = s.q[j + 1];
        const Vec3& p = s.p[j + 1];
        const double r = norm(q);
        // Eccentric anomaly from r and the radial momentum sign.
        const double cosE = (1.0 - r / a[j]) / e[j];
        const double sinE = dot(q, p) / (e[j] * L[j]);
        const double E = std::atan2(sinE, cosE);
        d.ell[j] = wrap_angle(E - e[j] * std::sin(E));
        d.L[j] = L[j];
        d.Gamma[j] = Gamma[j];
        const Vec3& node = (j < 2) ? nu2 : nu3;
        d.gamma[j] = wrap_angle(oriented_angle(C[j], node, evec[j]));
    }
    d.Psi[0] = norm(C12);
    d.Psi[1] = norm(Ctot);
    d.Psi[2] = dot(Ctot, k3);
    d.psi[0] = wrap_angle(oriented_angle(C12, nu3, nu2));
    d.psi[1] = wrap_angle(oriented_angle(Ctot, nu4, nu3));
    d.psi[2] = wrap_angle(oriented_angle(k3, k1, nu4));
    return d;
}

DepritVectors deprit_vectors(const DepritState& d) {
    const double Psi1 = d.Psi[0], Psi2 = d.Psi[1], Psi3 = d.Psi[2];
    const double G1 = d.Gamma[0], G2 = d.Gamma[1], G3 = d.Gamma[2];
    if (!(Psi1 > 0.0 && Psi2 > 0.0 && G1 > 0.0 && G2 > 0.0 && G3 > 0.0))
        throw DomainError("deprit_vectors: actions must be positive");
    if (std::fabs(Psi3) > Psi2)
        throw DomainError("deprit_vectors: |Psi3| exceeds Psi2");

    DepritVectors v;
    const Vec3 nu4_hat{std::cos(d.psi[2]), std::sin(d.psi[2]), 0.0};
    const double s = std::sqrt(std::max(0.0, Psi2 * Psi2 - Psi3 * Psi3));
    v.Ctot = Psi3 * k3 + s * cross(nu4_hat, k3);
    const Vec3 Chat = v.Ctot / Psi2;
    const Vec3 nu3_hat = std::cos(d.psi[1]) * nu4_hat + std::sin(d.psi[1]) * cross(Chat, nu4_hat);

    const double alpha = (Psi2 * Psi2 + Psi1 * Psi1 - G3 * G3) / (2.0 * Psi2);
    const double beta2 = Psi1 * Psi1 - alpha * alpha;
    if (beta2 < -1e-12 * Psi1 * Psi1)
        throw DomainError("deprit_vectors: (Psi1, Gamma3, Psi2) violate the triangle inequality");
    const double beta = std::sqrt(std::max(0.0, beta2));
    v.C12 = alpha * Chat + beta * cross(Chat, nu3_hat);
    const Vec3 C12hat = v.C12 / Psi1;
    const Vec3 nu2_hat = std::cos(d.psi[0]) * nu3_hat + std::sin(d.psi[0]) * cross(C12hat, nu3_hat);

    const double alpha1 = (Psi1 * Psi1 + G1 * G1 - G2 * G2) / (2.0 * Psi1);
    const double beta1sq = G1 * G1 - alpha1 * alpha1;
    if (beta1sq < -1e-12 * G1 * G1)
        throw DomainError("deprit_vectors: (Gamma1, Gamma2, Psi1) violate the triangle inequality");
    const double beta1 = std::sqrt(std::max(0.0, beta1sq));
    v.C[0] = alpha1 * C12hat + beta1 * cross(C12hat, nu2_hat);
    v.C[1] = v.C12 - v.C[0];
    v.C[2] = v.Ctot - v.C12;
    v.nu2 = cross(v.C[0], v.C[1]);
    v.nu3 = cross(v.C12, v.C[2]);
    v.nu4 = cross(k3, v.Ctot);

    for (int j = 0; j < 3; ++j) {
        const Vec3& node = (j < 2) ? nu2_hat : nu3_hat;
        const Vec3 Cj_hat = v.C[j] / d.Gamma[j];
        v.pericenter[j] =
            std::cos(d.gamma[j]) * node + std::sin(d.gamma[j]) * cross(Cj_hat, node);
    }
    return v;
}

double deprit_a(const DepritState& d, const MassSet& ms, int j) {
    const double mu = ms.mu[j + 1], M = ms.M[j + 1];
    return d.L[j] * d.L[j] / (mu * mu * M);
}

double deprit_e(const DepritState& d, int j) {
    return eccentricity_from_actions(d.L[j], d.Gamma[j]);
}

JacobiState deprit_to_jacobi(const DepritState& d, const MassSet& ms) {
    for (int j = 0; j < 3; ++j) {
        if (!(d.Gamma[j] > 0.0 && d.Gamma[j] < d.L[j]))
            throw DomainError("deprit_to_jacobi: need 0 < Gamma_j < L_j");
    }
    const DepritVectors v = deprit_vectors(d);
    JacobiState s;
    for (int j = 0; j < 3; ++j) {
        const double mu = ms.mu[j + 1], M = ms.M[j + 1];
        const double a = deprit_a(d, ms, j);
        const double e = deprit_e(d, j);
        const double E = solve_kepler(e, d.ell[j]);
        const double r = a * (1.0 - e * std::cos(E));
        const double se = std::sqrt(1.0 - e * e);
        const Vec3 P = v.pericenter[j];
        const Vec3 Q = cross(v.C[j] / d.Gamma[j], P);
        s.q[j + 1] = a * (std::cos(E) - e) * P + a * se * std::sin(E) * Q;
        const double f = mu * std::sqrt(M * a) / r;
        s.p[j + 1] = -f * std::sin(E) * P + f * se * std::cos(E) * Q;
    }
    return s;
}

double poisson_bracket(const Observable& f, const Observable& g, const JacobiState& s,
                       double h) {
    // Gradient of one observable over the 18 canonical components.
    auto gradient = [&](const Observable& obs, std::array<double, 18>& grad) {
        int idx = 0;
        for (int j = 1; j <= 3; ++j) {
            for (int part = 0; part < 2; ++part) {
                for (int k = 0; k < 3; ++k) {
                    JacobiState sp = s, sm = s;
                    double* cp;
                    double* cm;
                    if (part == 0) {
                        cp = &(k == 0 ? sp.q[j].x : (k == 1 ? sp.q[j].y : sp.q[j].z));
                        cm = &(k == 0 ? sm.q[j].x : (k == 1 ? sm.q[j].y : sm.q[j].z));
                    } else {
                        cp = &(k == 0 ? sp.p[j].x : (k == 1 ? sp.p[j].y : sp.p[j].z));
                        cm = &(k == 0 ? sm.p[j].x : (k == 1 ? sm.p[j].y : sm.p[j].z));
                    }
                    const double step = h * std::max(1.0, std::fabs(*cp));
                    *cp += step;
                    *cm -= step;
                    double diff = obs.f(sp) - obs.f(sm);
                    if (obs.is_angle) diff = wrap_pm_pi(diff);
                    grad[idx++] = diff / (2.0 * step);
                }
            }
        }
    };
    std::array<double, 18> gf, gg;
    gradient(f, gf);
    gradient(g, gg);
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            const int qi = 6 * j + k, pi = 6 * j + 3 + k;
            sum += gf[qi] * gg[pi] - gf[pi] * gg[qi];
        }
    }
    return sum;
}

double canonical_bracket(int i, int j) {
    // Variable order: (ell, L, gamma, Gamma, psi, Psi) per body.
    if (i / 6 != j / 6) return 0.0;
    const int a = i % 6, b = j % 6;
    if (a % 2 == 0 && b == a + 1) return 1.0;
    if (a % 2 == 1 && b == a - 1) return -1.0;
    return 0.0;
}

namespace {

// d(Deprit)/d(Jacobi component) for all 18 Deprit variables at once.
void deprit_jacobian(const JacobiState& s, const MassSet& ms, double h,
                     std::array<std::array<double, 18>, 18>& dDdJ) {
    auto pack = [](const DepritState& d, std::array<double, 18>& out) {
        for (int j = 0; j < 3; ++j) {
            out[6 * j + 0] = d.ell[j];
            out[6 * j + 1] = d.L[j];
            out[6 * j + 2] = d.gamma[j];
            out[6 * j + 3] = d.Gamma[j];
            out[6 * j + 4] = d.psi[j];
            out[6 * j + 5] = d.Psi[j];
        }
    };
    int idx = 0;
    for (int j = 1; j <= 3; ++j) {
        for (int part = 0; part < 2; ++part) {
            for (int k = 0; k < 3; ++k) {
                JacobiState sp = s, sm = s;
                double* cp;
                double* cm;
                if (part == 0) {
                    cp = &(k == 0 ? sp.q[j].x : (k == 1 ? sp.q[j].y : sp.q[j].z));
                    cm = &(k == 0 ? sm.q[j].x : (k == 1 ? sm.q[j].y : sm.q[j].z));
                } else {
                    cp = &(k == 0 ? sp.p[j].x : (k == 1 ? sp.p[j].y : sp.p[j].z));
                    cm = &(k == 0 ? sm.p[j].x : (k == 1 ? sm.p[j].y : sm.p[j].z));
                }
                const double step = h * std::max(1.0, std::fabs(*cp));
                *cp += step;
                *cm -= step;
                std::array<double, 18> vp, vm;
                pack(jacobi_to_deprit(sp, ms), vp);
                pack(jacobi_to_deprit(sm, ms), vm);
                for (int v = 0; v < 18; ++v) {
                    double diff = vp[v] - vm[v];
                    if (v % 2 == 0) diff = wrap_pm_pi(diff);  // angles at even slots
                    dDdJ[v][idx] = diff / (2.0 * step);
                }
                ++idx;
            }
        }
    }
}

void bracket_matrix(const std::array<std::array<double, 18>, 18>& dDdJ,
                    std::array<std::array<double, 18>, 18>& B) {
    for (int a = 0; a < 18; ++a) {
        for (int b = 0; b < 18; ++b) {
            double sum = 0.0;
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    const int qi = 6 * j + k, pi = 6 * j + 3 + k;
                    sum += dDdJ[a][qi] * dDdJ[b][pi] - dDdJ[a][pi] * dDdJ[b][qi];
                }
            }
            B[a][b] = sum;
        }
    }
}

}  // namespace

SymplecticReport verify_deprit_symplectic(const JacobiState& s, const MassSet& ms) {
    const double h = 1e-4;
    std::array<std::array<double, 18>, 18> J1, J2, B1, B2;
    deprit_jacobian(s, ms, h, J1);
    deprit_jacobian(s, ms, 0.5 * h, J2);
    bracket_matrix(J1, B1);
    bracket_matrix(J2, B2);
    SymplecticReport rep;
    for (int a = 0; a < 18; ++a) {
        for (int b = 0; b < 18; ++b) {
            // Richardson extrapolation of the O(h^2) central-difference error.
            rep.bracket[a][b] = (4.0 * B2[a][b] - B1[a][b]) / 3.0;
            rep.max_error =
                std::max(rep.max_error, std::fabs(rep.bracket[a][b] - canonical_bracket(a, b)));
        }
    }
    return rep;
}

TildeState deprit_to_tilde(const DepritState& d, double delta1, double delta3,
                           double /*unused*/) {
    TildeState t;
    t.gamma1 = d.gamma[0];
    t.Gamma1 = d.Gamma[0];
    t.gamma2t = -d.gamma[1];
    t.Gamma2t = d.Psi[0] - d.Gamma[1];
    t.psi1t = d.psi[0] + d.gamma[1];
    t.Psi1t = d.Psi[0] - delta1 * d.L[1];
    t.gamma3t = -d.gamma[2];
    t.Gamma3t = d.Psi[1] - d.Gamma[2] - delta3 * d.L[1];
    t.delta1 = delta1;
    t.delta3 = delta3;
    t.delta2 = d.Psi[1] / d.L[2];  // Psi2 is a first integral; record it as delta2*L3
    t.L1 = d.L[0];
    t.L2 = d.L[1];
    t.L3 = d.L[2];
    return t;
}

DepritState tilde_to_deprit(const TildeState& t, const DepritExtras& extras) {
    DepritState d;
    d.ell = extras.ell;
    d.L = {t.L1, t.L2, t.L3};
    d.gamma[0] = t.gamma1;
    d.Gamma[0] = t.Gamma1;
    d.Psi[0] = t.Psi1t + t.delta1 * t.L2;
    d.gamma[1] = -t.gamma2t;
    d.Gamma[1] = d.Psi[0] - t.Gamma2t;
    d.psi[0] = t.psi1t - d.gamma[1];
    d.Psi[1] = t.delta2 * t.L3;
    d.gamma[2] = -t.gamma3t;
    d.Gamma[2] = d.Psi[1] - t.Gamma3t - t.delta3 * t.L2;
    d.psi[1] = extras.psi2;
    d.psi[2] = extras.psi3;
    d.Psi[2] = extras.Psi3;
    return d;
}

std::pair<double, double> poincare_from_polar(double gamma1, double Gamma1, double L1) {
    if (!(Gamma1 <= L1)) throw DomainError("poincare_from_polar: Gamma1 exceeds L1");
    const double rho = std::sqrt(std::max(0.0, 2.0 * (L1 - Gamma1)));
    return {rho * std::cos(gamma1), -rho * std::sin(gamma1)};
}

std::pair<double, double> polar_from_poincare(double xi, double eta, double L1) {
    const double Gamma1 = L1 - 0.5 * (xi * xi + eta * eta);
    const double gamma1 = wrap_angle(std::atan2(-eta, xi));
    return {gamma1, Gamma1};
}

std::pair<double, double> inclinations(const DepritState& d) {
    const double G1 = d.Gamma[0], G2 = d.Gamma[1], G3 = d.Gamma[2];
    const double Psi1 = d.Psi[0], Psi2 = d.Psi[1];
    if (!(G1 > 0.0 && G2 > 0.0 && G3 > 0.0 && Psi1 > 0.0))
        throw DomainError("inclinations: actions must be positive");
    double c12 = (G1 * G1 + G2 * G2 - Psi1 * Psi1) / (2.0 * G1 * G2);
    double c23 = (G3 * G3 + Psi1 * Psi1 - Psi2 * Psi2) / (2.0 * G3 * Psi1);
    const double tol = 1e-9;
    if (std::fabs(c12) > 1.0 + tol || std::fabs(c23) > 1.0 + tol)
        throw DomainError("inclinations: inconsistent action values (|cos| > 1)");
    c12 = std::clamp(c12, -1.0, 1.0);
    c23 = std::clamp(c23, -1.0, 1.0);
    return {std::acos(c12), std::acos(c23)};
}

Vec3 normalized_c2(const DepritState& d, const MassSet& ms) {
    const DepritVectors v = deprit_vectors(d);
    const double a2 = deprit_a(d, ms, 1);
    const double factor = std::sqrt(ms.M[2]) / (ms.m[2] * ms.M[1] * std::sqrt(a2));
    return factor * v.C[1];
}

RescaledState planetary_rescale(const DepritState& d, double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("planetary_rescale: rho must be in (0,1]");
    RescaledState r;
    r.state = d;
    for (int j = 0; j < 3; ++j) {
        r.state.L[j] /= rho;
        r.state.Gamma[j] /= rho;
        r.state.Psi[j] /= rho;
    }
    r.time_factor = 1.0 / (rho * rho);
    return r;
}

}  // namespace fourbody
