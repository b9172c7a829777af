#include "fourbody/hamiltonians.hpp"

#include <atomic>
#include <cmath>

#include "fourbody/errors.hpp"
#include "fourbody/kepler.hpp"

namespace fourbody {

// ---------------------------------------------------------------------------
// Exact Hamiltonians
// ---------------------------------------------------------------------------

double f_kep(const DepritState& d, const MassSet& ms) {
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double mu = ms.mu[j + 1], M = ms.M[j + 1];
        if (!(d.L[j] > 0.0)) throw DomainError("f_kep: L_j must be positive");
        sum -= mu * mu * mu * M * M / (2.0 * d.L[j] * d.L[j]);
    }
    return sum;
}

double f_kep_jacobi(const JacobiState& s, const MassSet& ms) {
    double sum = 0.0;
    for (int j = 1; j <= 3; ++j) {
        const double r = norm(s.q[j]);
        if (!(r > 0.0)) throw DomainError("f_kep_jacobi: zero separation");
        sum += dot(s.p[j], s.p[j]) / (2.0 * ms.mu[j]) - ms.mu[j] * ms.M[j] / r;
    }
    return sum;
}

double inertial_hamiltonian(const CartesianState& s, const MassSet& ms) {
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) sum += dot(s.y[i], s.y[i]) / (2.0 * ms.m[i]);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            const double r = norm(s.x[i] - s.x[j]);
            if (!(r > 0.0)) throw DomainError("inertial_hamiltonian: collision");
            sum -= ms.m[i] * ms.m[j] / r;
        }
    }
    return sum;
}

double f_per_exact(const JacobiState& s, const MassSet& ms) {
    const double s01 = ms.sigma(0, 1), s11 = ms.sigma(1, 1);
    const double s02 = ms.sigma(0, 2), s12 = ms.sigma(1, 2), s22 = ms.sigma(2, 2);
    const Vec3& q1 = s.q[1];
    const Vec3& q2 = s.q[2];
    const Vec3& q3 = s.q[3];
    auto inv = [](const Vec3& v) {
        const double r = norm(v);
        if (!(r > 0.0)) throw DomainError("f_per_exact: collision");
        return 1.0 / r;
    };
    double sum = ms.mu[2] * ms.M[2] * inv(q2) + ms.mu[3] * ms.M[3] * inv(q3);
    sum -= ms.m[0] * ms.m[2] * inv(q2 + s11 * q1);
    sum -= ms.m[1] * ms.m[2] * inv(q2 - s01 * q1);
    sum -= ms.m[0] * ms.m[3] * inv(q3 + s22 * q2 + s11 * q1);
    sum -= ms.m[1] * ms.m[3] * inv(q3 + s22 * q2 + (s11 - 1.0) * q1);
    sum -= ms.m[2] * ms.m[3] * inv(q3 + (s22 - 1.0) * q2);
    return sum;
}

double f_per_pair_exact(int pair, const JacobiState& s, const MassSet& ms) {
    auto inv = [](const Vec3& v) {
        const double r = norm(v);
        if (!(r > 0.0)) throw DomainError("f_per_pair_exact: collision");
        return 1.0 / r;
    };
    if (pair == 12) {
        const double s01 = ms.sigma(0, 1), s11 = ms.sigma(1, 1);
        return ms.mu[2] * ms.M[2] * inv(s.q[2]) -
               ms.m[0] * ms.m[2] * inv(s.q[2] + s11 * s.q[1]) -
               ms.m[1] * ms.m[2] * inv(s.q[2] - s01 * s.q[1]);
    }
    if (pair == 23) {
        const double s22 = ms.sigma(2, 2);
        const double sM1 = ms.sigma(0, 2) + ms.sigma(1, 2);  // M1 / M2
        return ms.mu[3] * ms.M[3] * inv(s.q[3]) -
               ms.M[1] * ms.m[3] * inv(s.q[3] + s22 * s.q[2]) -
               ms.m[2] * ms.m[3] * inv(s.q[3] - sM1 * s.q[2]);
    }
    throw DomainError("f_per_pair_exact: pair must be 12 or 23");
}

double legendre_p(int n, double x) {
    if (n == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        const double pn = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / k;
        pm1 = p;
        p = pn;
    }
    return p;
}

LegendreResult f_per_legendre(int pair, const JacobiState& s, const MassSet& ms, int nmax) {
    const Vec3& qi = (pair == 12) ? s.q[1] : s.q[2];
    const Vec3& qo = (pair == 12) ? s.q[2] : s.q[3];
    if (pair != 12 && pair != 23) throw DomainError("f_per_legendre: pair must be 12 or 23");
    const double ri = norm(qi), ro = norm(qo);
    if (!(ri < ro)) throw DomainError("f_per_legendre: inner radius must be below outer");
    const double c = dot(qi, qo) / (ri * ro);
    const double mass = (pair == 12) ? ms.mu[1] * ms.m[2] : ms.mu[2] * ms.m[3];
    const std::vector<double>& st = (pair == 12) ? ms.sigma_tilde1 : ms.sigma_tilde2;
    if (nmax > ms.nmax) throw DomainError("f_per_legendre: nmax exceeds MassSet nmax");
    LegendreResult res;
    double ratio_pow = (ri / ro) * (ri / ro);
    for (int n = 2; n <= nmax; ++n) {
        const double term = -(mass / ro) * st[n - 2] * legendre_p(n, c) * ratio_pow;
        res.total += term;
        if (n == 2) res.n2 = term;
        if (n == 3) res.n3 = term;
        ratio_pow *= ri / ro;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Double averaging
// ---------------------------------------------------------------------------

namespace {

double average_rows(const std::function<double(double, double)>& f, const AverageSpec& spec,
                    bool parallel) {
    if (spec.N1 < 8 || spec.N2 < 8) throw DomainError("average_2angles: node counts must be >= 8");
    const int N1 = spec.N1, N2 = spec.N2;
    std::vector<double> rows(N1, 0.0);
    std::atomic<bool> bad{false};
    const double h1 = 2.0 * M_PI / N1, h2 = 2.0 * M_PI / N2;
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < N1; ++i) {
        double sum = 0.0;  // per-row serial sum keeps the reduction deterministic
        for (int j = 0; j < N2; ++j) {
            const double v = f(i * h1, j * h2);
            if (!std::isfinite(v)) bad.store(true);
            sum += v;
        }
        rows[i] = sum;
    }
    if (bad.load()) throw NumericalError("average_2angles: non-finite integrand sample");
    double total = 0.0;
    for (int i = 0; i < N1; ++i) total += rows[i];  // fixed-order final reduction
    return total / (static_cast<double>(N1) * N2);
}

}  // namespace

double average_2angles(const std::function<double(double, double)>& f, const AverageSpec& spec) {
    return average_rows(f, spec, true);
}

double average_2angles_serial(const std::function<double(double, double)>& f,
                              const AverageSpec& spec) {
    return average_rows(f, spec, false);
}

double pair12_legendre_integrand(const DepritState& base, const MassSet& ms, int n,
                                 double ell1, double ell2) {
    DepritState d = base;
    d.ell[0] = ell1;
    d.ell[1] = ell2;
    const JacobiState s = deprit_to_jacobi(d, ms);
    const double r1 = norm(s.q[1]), r2 = norm(s.q[2]);
    const double c = dot(s.q[1], s.q[2]) / (r1 * r2);
    return legendre_p(n, c) * std::pow(r1, n) / std::pow(r2, n + 1);
}

// ---------------------------------------------------------------------------
// Closed-form averaged Hamiltonians
// ---------------------------------------------------------------------------

double f_quad12_closed(double e1, double e2, double gamma1, double i12, double a1, double a2) {
    if (!(e1 >= 0.0 && e1 < 1.0 && e2 >= 0.0 && e2 < 1.0))
        throw DomainError("f_quad12_closed: eccentricities must be in [0,1)");
    const double si2 = std::sin(i12) * std::sin(i12);
    const double cg = std::cos(gamma1);
    const double pref = a1 * a1 / (8.0 * a2 * a2 * a2 * std::pow(1.0 - e2 * e2, 1.5));
    return pref * ((15.0 * e1 * e1 * cg * cg - 12.0 * e1 * e1 - 3.0) * si2 + 3.0 * e1 * e1 + 2.0);
}

double f_oct12_closed(double e1, double e2, double gamma1, double gamma2, double i12,
                      double a1, double a2, double Gamma1, double L1) {
    if (!(e1 >= 0.0 && e1 < 1.0 && e2 >= 0.0 && e2 < 1.0))
        throw DomainError("f_oct12_closed: eccentricities must be in [0,1)");
    const double si2 = std::sin(i12) * std::sin(i12);
    const double ci = std::cos(i12);
    const double cg1 = std::cos(gamma1), sg1 = std::sin(gamma1);
    const double GL2 = Gamma1 * Gamma1 / (L1 * L1);  // = 1 - e1^2
    const double B = 2.0 + 5.0 * e1 * e1 - 7.0 * e1 * e1 * std::cos(2.0 * gamma1);
    const double A = 4.0 + 3.0 * e1 * e1 - 2.5 * B * si2;
    // pericenters measured from opposite nodes, hence the sign of the mixed term
    const double cphi = -cg1 * std::cos(gamma2) + ci * sg1 * std::sin(gamma2);
    const double pref = (15.0 / 64.0) * std::pow(a1, 3) / std::pow(a2, 4) * e1 * e2 /
                        std::pow(1.0 - e2 * e2, 2.5);
    return pref * (A * cphi - 10.0 * ci * si2 * GL2 * sg1 * std::sin(gamma2));
}

// ---------------------------------------------------------------------------
// Expansion terms
// ---------------------------------------------------------------------------

const char* term_name(Term t) {
    switch (t) {
        case Term::H0_12: return "H0_12";
        case Term::H1_12: return "H1_12";
        case Term::H2tilde: return "H2tilde";
        case Term::H2_12: return "H2_12";
        case Term::H0_23: return "H0_23";
        case Term::H1_23: return "H1_23";
        case Term::H2_23: return "H2_23";
        case Term::H3tilde: return "H3tilde";
        case Term::H3_23: return "H3_23";
        case Term::H5_23: return "H5_23";
    }
    return "?";
}

Term term_from_name(const std::string& name) {
    for (Term t : {Term::H0_12, Term::H1_12, Term::H2tilde, Term::H2_12, Term::H0_23,
                   Term::H1_23, Term::H2_23, Term::H3tilde, Term::H3_23, Term::H5_23}) {
        if (name == term_name(t)) return t;
    }
    throw DomainError("unknown secular term id: " + name);
}

double h0_12(double gamma1, double Gamma1, double Gamma2t, double L1) {
    const double s = std::sin(gamma1);
    const double a = 1.0 - Gamma1 * Gamma1 / (L1 * L1);
    const double b = 1.0 - Gamma2t * Gamma2t / (Gamma1 * Gamma1);
    return a * (2.0 - 5.0 * b * s * s) + Gamma2t * Gamma2t / (L1 * L1);
}

std::array<double, 3> h0_12_gradient(double gamma1, double Gamma1, double Gamma2t, double L1) {
    const double s = std::sin(gamma1);
    const double L2 = L1 * L1;
    const double a = 1.0 - Gamma1 * Gamma1 / L2;
    const double b = 1.0 - Gamma2t * Gamma2t / (Gamma1 * Gamma1);
    std::array<double, 3> g;
    g[0] = -a * 5.0 * b * std::sin(2.0 * gamma1);
    g[1] = (2.0 * Gamma1 / L2) * (5.0 * b * s * s - 2.0) -
           10.0 * a * (Gamma2t * Gamma2t / (Gamma1 * Gamma1 * Gamma1)) * s * s;
    g[2] = 10.0 * a * (Gamma2t / (Gamma1 * Gamma1)) * s * s + 2.0 * Gamma2t / L2;
    return g;
}

std::array<double, 4> nu_coefficients(double delta1, double delta3) {
    const double d1 = delta1, d3 = delta3;
    const double d1c = d1 * d1 * d1;
    std::array<double, 4> nu;
    nu[0] = (35.0 / (8.0 * d1c)) * (d1 * d1 - 1.0) * (d3 - d1) * (d3 + d1) * (d3 + d1);
    nu[1] = -(1.0 / (8.0 * d1c)) * (3.0 * d1 * d1 - 7.0) * (d3 + d1) *
            (15.0 * d3 * d3 - 10.0 * d1 * d3 - d1 * d1);
    nu[2] = (1.0 / (8.0 * d1c)) * (3.0 * d1 * d1 - 7.0) * (d3 - d1) *
            (15.0 * d3 * d3 + 10.0 * d1 * d3 - d1 * d1);
    nu[3] = -(35.0 / (8.0 * d1c)) * (d1 * d1 - 1.0) * (d3 + d1) * (d3 - d1) * (d3 - d1);
    return nu;
}

double j1_23(double gamma3t, double psi1t, double delta1, double delta3) {
    const double d1 = delta1, d3 = delta3;
    const double sg = std::sin(gamma3t), cg = std::cos(gamma3t);
    const double cp = std::cos(psi1t), sp = std::sin(psi1t);
    return 30.0 * d3 * d3 * sg * cp * sp - 10.0 * d1 * d1 * sg * cp * sp -
           20.0 * d1 * d3 * cg * cp * cp + 10.0 * d1 * d3 * cg;
}

double j2_23(double gamma3t, double psi1t, double delta1, double delta3) {
    const double d1 = delta1, d3 = delta3;
    const double sg = std::sin(gamma3t), cg = std::cos(gamma3t);
    const double cp = std::cos(psi1t), sp = std::sin(psi1t);
    const double cp2 = cp * cp;
    return -50.0 * d1 * d3 * cg * cp * sp + (70.0 * d3 / d1) * cg * cp * sp +
           (105.0 * d3 * d3 / (d1 * d1)) * sg * cp2 - 75.0 * d3 * d3 * sg * cp2 +
           25.0 * d1 * d1 * sg * cp2 - 35.0 * sg * cp2 -
           (105.0 * d3 * d3 / (d1 * d1)) * sg + 60.0 * d3 * d3 * sg - 17.0 * d1 * d1 * sg +
           28.0 * sg;
}

double dj2_dgamma3(double gamma3t, double psi1t, double delta1, double delta3) {
    const double d1 = delta1, d3 = delta3;
    const double sg = std::sin(gamma3t), cg = std::cos(gamma3t);
    const double cp = std::cos(psi1t), sp = std::sin(psi1t);
    const double cp2 = cp * cp;
    return 50.0 * d1 * d3 * sg * cp * sp - (70.0 * d3 / d1) * sg * cp * sp +
           (105.0 * d3 * d3 / (d1 * d1)) * cg * cp2 - 75.0 * d3 * d3 * cg * cp2 +
           25.0 * d1 * d1 * cg * cp2 - 35.0 * cg * cp2 -
           (105.0 * d3 * d3 / (d1 * d1)) * cg + 60.0 * d3 * d3 * cg - 17.0 * d1 * d1 * cg +
           28.0 * cg;
}

namespace {

double sqrt_g1sq_minus_g2tsq(const TildeState& s) {
    const double v = s.Gamma1 * s.Gamma1 - s.Gamma2t * s.Gamma2t;
    if (v < 0.0) throw DomainError("expansion term: Gamma2t exceeds Gamma1 under a square root");
    return std::sqrt(v);
}

double h2_tilde_value(const TildeState& s) {
    const double L2 = s.L1 * s.L1;
    const double G = s.Gamma1, Gt = s.Gamma2t, P = s.Psi1t;
    const double H0 = h0_12(s.gamma1, G, Gt, s.L1);
    const double sg = std::sin(s.gamma1);
    const double G2 = G * G, G4 = G2 * G2, Gt2 = Gt * Gt, Gt4 = Gt2 * Gt2;
    const double bracket =
        sg * sg * (5.0 * G2 - 5.0 * G4 / L2 + 210.0 * G2 * Gt2 / L2 - 205.0 * Gt4 / L2 +
                   205.0 * Gt4 / G2) +
        G4 / L2 - 66.0 * G2 * Gt2 / L2 + 41.0 * Gt4 / L2 + 40.0 * Gt2;
    return (3.0 * H0 - 1.0) * P * P + (6.0 - 8.0 * H0 - 2.0 * G2 / L2) * Gt * P +
           bracket / 8.0;
}

double h2_12_value(const TildeState& s) {
    const double L2 = s.L1 * s.L1;
    const double G = s.Gamma1, Gt = s.Gamma2t;
    const double e1sq = 1.0 - G * G / L2;
    if (e1sq < 0.0) throw DomainError("H2_12: Gamma1 exceeds L1");
    const double cg1 = std::cos(s.gamma1), sg1 = std::sin(s.gamma1);
    const double cg2 = std::cos(s.gamma2t), sg2 = std::sin(s.gamma2t);
    const double si2 = 1.0 - Gt * Gt / (G * G);  // sin^2 of the mutual inclination
    if (si2 < 0.0) throw DomainError("H2_12: Gamma2t exceeds Gamma1");
    const double GL = G * G / L2;
    const double b1 = GL * (5.0 * si2 * (6.0 - 7.0 * cg1 * cg1) - 3.0) -
                      35.0 * sg1 * sg1 * si2 + 7.0;
    const double b2 = GL * (5.0 * si2 * (4.0 - 7.0 * cg1 * cg1) - 3.0) -
                      35.0 * sg1 * sg1 * si2 + 7.0;
    return std::sqrt(e1sq) * (cg1 * cg2 * b1 + (Gt / G) * sg1 * sg2 * b2);
}

double h3_tilde_value(const TildeState& s) {
    const double d1 = s.delta1, d3 = s.delta3;
    const double d1sq = d1 * d1, d14 = d1sq * d1sq, d3sq = d3 * d3;
    const double cp2 = std::cos(s.psi1t) * std::cos(s.psi1t);
    return s.Psi1t * (5.0 * (d3sq - d14) * cp2 - 5.0 * d3sq + 3.0 * d14) +
           s.Gamma2t * (5.0 * (d14 - d1sq * d3sq) * cp2 + 4.0 * d1sq * d3sq - 3.0 * d14) +
           s.Gamma3t * (5.0 * (d1sq * d1 * d3 - d1 * d3) * cp2 + 5.0 * d1 * d3 -
                        4.0 * d1sq * d1 * d3);
}

double h3_23_value(const TildeState& s) {
    const std::array<double, 4> nu = nu_coefficients(s.delta1, s.delta3);
    return nu[0] * std::cos(s.gamma3t + 3.0 * s.psi1t) + nu[1] * std::cos(s.gamma3t + s.psi1t) +
           nu[2] * std::cos(s.gamma3t - s.psi1t) + nu[3] * std::cos(s.gamma3t - 3.0 * s.psi1t);
}

}  // namespace

double term_value(Term t, const TildeState& s) {
    switch (t) {
        case Term::H0_12:
            return h0_12(s.gamma1, s.Gamma1, s.Gamma2t, s.L1);
        case Term::H1_12: {
            const double H0 = h0_12(s.gamma1, s.Gamma1, s.Gamma2t, s.L1);
            return (3.0 * H0 - 1.0) * s.Psi1t - 4.0 * s.Gamma2t * H0 + 3.0 * s.Gamma2t -
                   s.Gamma1 * s.Gamma1 * s.Gamma2t / (s.L1 * s.L1);
        }
        case Term::H2tilde:
            return h2_tilde_value(s);
        case Term::H2_12:
            return h2_12_value(s);
        case Term::H0_23: {
            const double c = std::cos(s.psi1t);
            return c * c;
        }
        case Term::H1_23: {
            const double c = std::sin(s.psi1t);
            return c * c;
        }
        case Term::H2_23: {
            const double R = sqrt_g1sq_minus_g2tsq(s);
            const double c1 = s.delta1 * s.delta1;
            const double c2 = -(5.0 - 4.0 * s.delta1 * s.delta1);
            return R * (c1 * std::cos(s.psi1t) * std::cos(s.gamma2t) +
                        c2 * std::sin(s.psi1t) * std::sin(s.gamma2t));
        }
        case Term::H3tilde:
            return h3_tilde_value(s);
        case Term::H3_23:
            return h3_23_value(s);
        case Term::H5_23: {
            const double R = sqrt_g1sq_minus_g2tsq(s);
            return R * (j1_23(s.gamma3t, s.psi1t, s.delta1, s.delta3) * std::cos(s.gamma2t) +
                        j2_23(s.gamma3t, s.psi1t, s.delta1, s.delta3) * std::sin(s.gamma2t));
        }
    }
    throw DomainError("term_value: unknown term");
}

namespace {

void set_var(TildeState& s, int i, double v) {
    switch (i) {
        case 0: s.gamma1 = v; break;
        case 1: s.Gamma1 = v; break;
        case 2: s.gamma2t = v; break;
        case 3: s.Gamma2t = v; break;
        case 4: s.psi1t = v; break;
        case 5: s.Psi1t = v; break;
        case 6: s.gamma3t = v; break;
        case 7: s.Gamma3t = v; break;
    }
}

double get_var(const TildeState& s, int i) {
    switch (i) {
        case 0: return s.gamma1;
        case 1: return s.Gamma1;
        case 2: return s.gamma2t;
        case 3: return s.Gamma2t;
        case 4: return s.psi1t;
        case 5: return s.Psi1t;
        case 6: return s.gamma3t;
        case 7: return s.Gamma3t;
    }
    return 0.0;
}

std::array<double, 8> fd_gradient(Term t, const TildeState& s) {
    std::array<double, 8> g{};
    for (int i = 0; i < 8; ++i) {
        const double x = get_var(s, i);
        const double h = 1e-5 * std::max(1.0, std::fabs(x));
        auto central = [&](double step) {
            TildeState sp = s, sm = s;
            set_var(sp, i, x + step);
            set_var(sm, i, x - step);
            return (term_value(t, sp) - term_value(t, sm)) / (2.0 * step);
        };
        const double d1 = central(h), d2 = central(0.5 * h);
        g[i] = (4.0 * d2 - d1) / 3.0;  // Richardson on the O(h^2) error
    }
    return g;
}

}  // namespace

std::array<double, 8> term_gradient(Term t, const TildeState& s) {
    std::array<double, 8> g{};
    switch (t) {
        case Term::H0_12: {
            const std::array<double, 3> g0 = h0_12_gradient(s.gamma1, s.Gamma1, s.Gamma2t, s.L1);
            g[0] = g0[0];
            g[1] = g0[1];
            g[3] = g0[2];
            return g;
        }
        case Term::H1_12: {
            const double L2 = s.L1 * s.L1;
            const double H0 = h0_12(s.gamma1, s.Gamma1, s.Gamma2t, s.L1);
            const std::array<double, 3> g0 = h0_12_gradient(s.gamma1, s.Gamma1, s.Gamma2t, s.L1);
            const double k = 3.0 * s.Psi1t - 4.0 * s.Gamma2t;
            g[0] = k * g0[0];
            g[1] = k * g0[1] - 2.0 * s.Gamma1 * s.Gamma2t / L2;
            g[3] = k * g0[2] - 4.0 * H0 + 3.0 - s.Gamma1 * s.Gamma1 / L2;
            g[5] = 3.0 * H0 - 1.0;
            return g;
        }
        case Term::H2_23: {
            const double R = sqrt_g1sq_minus_g2tsq(s);
            const double c1 = s.delta1 * s.delta1;
            const double c2 = -(5.0 - 4.0 * s.delta1 * s.delta1);
            const double cp = std::cos(s.psi1t), sp = std::sin(s.psi1t);
            const double cg = std::cos(s.gamma2t), sg = std::sin(s.gamma2t);
            const double ang = c1 * cp * cg + c2 * sp * sg;
            g[1] = (s.Gamma1 / R) * ang;
            g[3] = (-s.Gamma2t / R) * ang;
            g[2] = R * (-c1 * cp * sg + c2 * sp * cg);
            g[4] = R * (-c1 * sp * cg + c2 * cp * sg);
            return g;
        }
        case Term::H3_23: {
            const std::array<double, 4> nu = nu_coefficients(s.delta1, s.delta3);
            const double k[4] = {3.0, 1.0, -1.0, -3.0};
            for (int i = 0; i < 4; ++i) {
                const double arg = s.gamma3t + k[i] * s.psi1t;
                g[6] -= nu[i] * std::sin(arg);
                g[4] -= nu[i] * k[i] * std::sin(arg);
            }
            return g;
        }
        default:
            return fd_gradient(t, s);
    }
}

std::pair<double, std::array<double, 8>> secular_value_and_gradient(const SecularModel& model,
                                                                    const TildeState& s) {
    if (model.terms.empty()) throw DomainError("secular model: empty term set");
    double value = 0.0;
    std::array<double, 8> grad{};
    for (const auto& [t, pref] : model.terms) {
        if (!std::isfinite(pref)) throw DomainError("secular model: non-finite prefactor");
        value += pref * term_value(t, s);
        const std::array<double, 8> g = term_gradient(t, s);
        for (int i = 0; i < 8; ++i) grad[i] += pref * g[i];
    }
    return {value, grad};
}

double secular_value(const SecularModel& model, const TildeState& s) {
    double value = 0.0;
    for (const auto& [t, pref] : model.terms) value += pref * term_value(t, s);
    return value;
}

// ---------------------------------------------------------------------------
// Scale constants
// ---------------------------------------------------------------------------

double alpha0_12(const MassSet& ms, double L1, double delta1) {
    return 3.0 * std::pow(L1, 4) * std::pow(ms.M[2], 3) * std::pow(ms.mu[2], 6) /
           (8.0 * ms.M[1] * ms.M[1] * std::pow(delta1, 3) * std::pow(ms.mu[1], 4));
}

double alpha1_12(const MassSet& ms, double L1, double delta1) {
    return -alpha0_12(ms, L1, delta1) / delta1;
}

double alpha_tilde2(const MassSet& ms, double L1, double delta1) {
    return 2.0 * alpha0_12(ms, L1, delta1) / (delta1 * delta1);
}

double alpha2_12(const MassSet& ms, double L1, double delta1) {
    return -(15.0 / 64.0) * std::pow(L1, 6) * std::pow(ms.mu[2], 8) * std::pow(ms.M[2], 4) /
           (std::pow(ms.mu[1], 6) * std::pow(ms.M[1], 3)) * std::sqrt(1.0 - delta1 * delta1) /
           std::pow(delta1, 5);
}

std::array<double, 9> kbar_coefficients(double Gamma2t, double Psi1t, double Gamma3t,
                                        double delta1, double delta2, double delta3, double L1) {
    if (!(delta1 > 0.0 && delta1 < 1.0 && delta2 > 0.0 && delta2 < 1.0))
        throw DomainError("kbar_coefficients: delta1, delta2 must lie in (0,1)");
    const double G = Gamma2t, P = Psi1t, H = Gamma3t;
    const double d1 = delta1, d2 = delta2, d3 = delta3;
    const double L2 = L1 * L1;
    const double d1sq = d1 * d1, d1c = d1sq * d1, d14 = d1sq * d1sq, d15 = d14 * d1,
                 d16 = d15 * d1;
    const double d3sq = d3 * d3, d3c = d3sq * d3, d34 = d3sq * d3sq;
    const double d2c = d2 * d2 * d2, d24 = d2c * d2, d25 = d24 * d2;

    std::array<double, 9> K;
    // mu^0 row
    K[0] = -(((18.0 * d1sq - 30.0) * d3sq - 6.0 * d14 + 10.0 * d1sq) / (3.0 * d1sq * d2c));
    K[1] = ((12.0 * G * d1sq - 20.0 * P) * d3sq + (-12.0 * H * d1c + 20.0 * H * d1) * d3 +
            (4.0 * P - 4.0 * G) * d14) /
           (d1c * d2c);
    K[2] = -(1.0 / (d14 * d2c)) *
           (((12.0 * G * P - 9.0 * L2 + 15.0 * G * G) * d1sq - 30.0 * P * P + 15.0 * L2 -
             15.0 * G * G) *
                d3sq +
            (-24.0 * G * H * d1c + 40.0 * H * P * d1) * d3 +
            (-2.0 * P * P + 4.0 * G * P + 3.0 * L2 + 6.0 * H * H - 5.0 * G * G) * d14 +
            (-5.0 * L2 - 10.0 * H * H + 5.0 * G * G) * d1sq);
    // mu^1 row
    K[3] = -(((24.0 * d1sq - 40.0) * d3c + (-12.0 * d14 + 20.0 * d1sq) * d3) / (d1sq * d24));
    K[4] = ((48.0 * G * d1sq - 80.0 * P) * d3c + (-72.0 * H * d1c + 120.0 * H * d1) * d3sq +
            (24.0 * P - 24.0 * G) * d14 * d3 + 12.0 * H * d15 - 20.0 * H * d1c) /
           (d1c * d24);
    K[5] = -(1.0 / (d14 * d24)) *
           (((48.0 * G * P - 36.0 * L2 + 60.0 * G * G) * d1sq - 120.0 * P * P + 60.0 * L2 -
             60.0 * G * G) *
                d3c +
            (-144.0 * G * H * d1c + 240.0 * H * P * d1) * d3sq +
            ((-12.0 * P * P + 24.0 * G * P + 18.0 * L2 + 72.0 * H * H - 30.0 * G * G) * d14 +
             (-30.0 * L2 - 120.0 * H * H + 30.0 * G * G) * d1sq) *
                d3 +
            (-24.0 * H * P + 24.0 * G * H) * d15);
    // mu^2 row
    K[6] = -(((123.0 * d1sq - 205.0) * d34 + (-78.0 * d14 + 130.0 * d1sq) * d3sq + 3.0 * d16 -
              5.0 * d14) /
             (2.0 * d1sq * d25));
    K[7] = (1.0 / (d1c * d25)) *
           ((123.0 * G * d1sq - 205.0 * P) * d34 + (-246.0 * H * d1c + 410.0 * H * d1) * d3c +
            (78.0 * P - 78.0 * G) * d14 * d3sq + (78.0 * H * d15 - 130.0 * H * d1c) * d3 +
            (-6.0 * P + 3.0 * G) * d16 + 5.0 * P * d14);
    K[8] = -(1.0 / (4.0 * d14 * d25)) *
           (((492.0 * G * P - 369.0 * L2 + 615.0 * G * G) * d1sq - 1230.0 * P * P + 615.0 * L2 -
             615.0 * G * G) *
                d34 +
            (-1968.0 * G * H * d1c + 3280.0 * H * P * d1) * d3c +
            ((-156.0 * P * P + 312.0 * G * P + 234.0 * L2 + 1476.0 * H * H - 390.0 * G * G) *
                 d14 +
             (-390.0 * L2 - 2460.0 * H * H + 390.0 * G * G) * d1sq) *
                d3sq +
            (-624.0 * H * P + 624.0 * G * H) * d15 * d3 +
            (36.0 * P * P - 36.0 * G * P - 9.0 * L2 - 156.0 * H * H + 15.0 * G * G) * d16 +
            (-10.0 * P * P + 15.0 * L2 + 260.0 * H * H - 15.0 * G * G) * d14);
    return K;
}

}  // namespace fourbody
