#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "fourbody/errors.hpp"
#include "fourbody/hamiltonians.hpp"
#include "helpers.hpp"

using namespace fourbody;
using namespace fourbody::testing;

namespace {

TildeState random_tilde(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TildeState s;
    s.L1 = 1.0;
    s.L2 = 3.0;
    s.L3 = 10.0;
    s.Gamma1 = 0.4 + 0.55 * u(rng);
    s.Gamma2t = 0.05 + 0.85 * s.Gamma1 * u(rng);
    s.Psi1t = 0.3 + 0.5 * u(rng);
    s.Gamma3t = 0.1 + 0.3 * u(rng);
    s.gamma1 = 2.0 * M_PI * u(rng);
    s.gamma2t = 2.0 * M_PI * u(rng);
    s.psi1t = 2.0 * M_PI * u(rng);
    s.gamma3t = 2.0 * M_PI * u(rng);
    return s;
}

}  // namespace

TEST_CASE("keplerian part agrees between charts") {
    const MassSet ms = default_masses();
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const JacobiState j = random_hierarchical(rng, ms);
        const DepritState d = jacobi_to_deprit(j, ms);
        CHECK(f_kep(d, ms) == doctest::Approx(f_kep_jacobi(j, ms)).epsilon(1e-11));
    }
}

TEST_CASE("perturbing function closes the energy budget") {
    const MassSet ms = default_masses();
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const JacobiState j = random_hierarchical(rng, ms);
        const CartesianState c = jacobi_to_cartesian(j, ms);
        const double h_inertial = inertial_hamiltonian(c, ms);
        const double p0_kin = dot(j.p[0], j.p[0]) / (2.0 * ms.M[3]);
        const double lhs = f_kep_jacobi(j, ms) + f_per_exact(j, ms);
        const double scale = std::max(1.0, std::fabs(h_inertial));
        CHECK(std::fabs(lhs - (h_inertial - p0_kin)) < 1e-12 * scale);
    }
}

TEST_CASE("legendre series converges geometrically to the pair term") {
    const MassSet ms = derive_masses(1.0, 0.6, 0.8, 0.5, 12);
    std::mt19937_64 rng(11);
    const JacobiState j = random_hierarchical(rng, ms, 0.1);
    for (int pair : {12, 23}) {
        const double exact = f_per_pair_exact(pair, j, ms);
        std::array<double, 11> err{};
        for (int nmax = 2; nmax <= 10; ++nmax)
            err[nmax] = std::fabs(f_per_legendre(pair, j, ms, nmax).total - exact);
        // terms alternate in sign, so compare the remainder two orders apart;
        // the floor is cancellation noise in the exact pair difference
        for (int nmax = 4; nmax <= 10; ++nmax)
            CHECK(err[nmax] < std::max(err[nmax - 2] * 0.6, 1e-14 * std::fabs(exact)));
        const LegendreResult r = f_per_legendre(pair, j, ms, 3);
        CHECK(r.total == doctest::Approx(r.n2 + r.n3).epsilon(1e-14));
    }
}

TEST_CASE("legendre rejects non-hierarchical configurations") {
    const MassSet ms = default_masses();
    std::array<OrbitElements, 3> el;
    el[0] = {1.0, 0.1, 0.4, 0.3, 0.2, 1.0};
    el[1] = {0.5, 0.1, 0.8, 1.3, 0.9, 2.0};  // outer radius below the inner one
    el[2] = {150.0, 0.1, 0.3, 2.3, 0.5, 3.0};
    const JacobiState j = jacobi_from_elements(ms, el);
    CHECK_THROWS_AS(f_per_legendre(12, j, ms, 6), DomainError);
}

TEST_CASE("openmp and serial averages are bit identical") {
    const AverageSpec spec{96, 80};
    auto f = [](double a, double b) {
        return std::exp(0.4 * std::cos(a)) * std::cos(2.0 * b - a);
    };
    CHECK(average_2angles(f, spec) == average_2angles_serial(f, spec));
    CHECK_THROWS_AS(average_2angles(f, AverageSpec{4, 64}), DomainError);
}

TEST_CASE("double average of the quadrupole integrand matches the closed form") {
    const MassSet ms = default_masses();
    std::mt19937_64 rng(23);
    const JacobiState j = random_hierarchical(rng, ms, 0.1);
    const DepritState d = jacobi_to_deprit(j, ms);
    const AverageSpec spec{96, 96};
    const double avg = average_2angles(
        [&](double l1, double l2) { return pair12_legendre_integrand(d, ms, 2, l1, l2); },
        spec);
    const double closed = f_quad12_closed(deprit_e(d, 0), deprit_e(d, 1), d.gamma[0],
                                          inclinations(d).first, deprit_a(d, ms, 0),
                                          deprit_a(d, ms, 1));
    CHECK(avg == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("octupole closed form vanishes for a circular inner orbit") {
    CHECK(f_oct12_closed(0.0, 0.3, 1.1, 0.4, 0.7, 1.0, 20.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("term gradients agree with finite differences") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 5; ++k) {
        const TildeState s = random_tilde(rng);
        for (Term t : {Term::H0_12, Term::H1_12, Term::H2tilde, Term::H2_12, Term::H0_23,
                       Term::H1_23, Term::H2_23, Term::H3tilde, Term::H3_23, Term::H5_23}) {
            const auto g = term_gradient(t, s);
            // Independent central differences with a different step size.
            auto probe = [&](int idx, double h) {
                TildeState a = s, b = s;
                double* fa = nullptr;
                double* fb = nullptr;
                double* fields_a[8] = {&a.gamma1, &a.Gamma1, &a.gamma2t, &a.Gamma2t,
                                       &a.psi1t,  &a.Psi1t,  &a.gamma3t, &a.Gamma3t};
                double* fields_b[8] = {&b.gamma1, &b.Gamma1, &b.gamma2t, &b.Gamma2t,
                                       &b.psi1t,  &b.Psi1t,  &b.gamma3t, &b.Gamma3t};
                fa = fields_a[idx];
                fb = fields_b[idx];
                *fa += h;
                *fb -= h;
                return (term_value(t, a) - term_value(t, b)) / (2.0 * h);
            };
            for (int i = 0; i < 8; ++i) {
                const double h = 3e-6;
                const double fd = (4.0 * probe(i, h) - probe(i, 2.0 * h)) / 3.0;
                CHECK(std::fabs(g[i] - fd) < 1e-6 * std::max(1.0, std::fabs(fd)));
            }
        }
    }
}

TEST_CASE("structural identities of the expansion terms") {
    std::mt19937_64 rng(43);
    const TildeState s = random_tilde(rng);

    // H3_23 has zero mean in psi1~ (trapezoid rule is exact on harmonics).
    const int N = 16;
    double mean = 0.0;
    for (int k = 0; k < N; ++k) {
        TildeState sk = s;
        sk.psi1t = 2.0 * M_PI * k / N;
        mean += term_value(Term::H3_23, sk);
    }
    CHECK(std::fabs(mean / N) < 1e-14);

    // delta3 = delta1 kills the nu0 harmonic.
    CHECK(std::fabs(nu_coefficients(0.5, 0.5)[0]) < 1e-15);

    // H2_23 vanishes on the circular boundary Gamma2~ = Gamma1.
    TildeState sb = s;
    sb.Gamma2t = sb.Gamma1;
    CHECK(term_value(Term::H2_23, sb) == 0.0);

    // The quadrupole pair terms do not depend on gamma2~ or psi1~.
    for (Term t : {Term::H0_12, Term::H1_12}) {
        const auto g = term_gradient(t, s);
        CHECK(std::fabs(g[2]) < 1e-14);
        CHECK(std::fabs(g[4]) < 1e-14);
    }
}

TEST_CASE("secular models compose values and gradients") {
    std::mt19937_64 rng(47);
    const TildeState s = random_tilde(rng);
    SecularModel m{{{Term::H0_12, 2.0}, {Term::H2_23, -0.5}}};
    const auto [v, g] = secular_value_and_gradient(m, s);
    CHECK(v == doctest::Approx(2.0 * term_value(Term::H0_12, s) -
                               0.5 * term_value(Term::H2_23, s))
                   .epsilon(1e-14));
    const auto g0 = term_gradient(Term::H0_12, s);
    const auto g2 = term_gradient(Term::H2_23, s);
    for (int i = 0; i < 8; ++i)
        CHECK(g[i] == doctest::Approx(2.0 * g0[i] - 0.5 * g2[i]).epsilon(1e-12));
    CHECK_THROWS_AS(secular_value_and_gradient(SecularModel{}, s), DomainError);
}

TEST_CASE("scale constants obey the printed relations") {
    const MassSet ms = default_masses();
    const double L1 = 1.2, d1 = 0.45;
    CHECK(alpha1_12(ms, L1, d1) == doctest::Approx(-alpha0_12(ms, L1, d1) / d1).epsilon(1e-14));
    CHECK(alpha_tilde2(ms, L1, d1) ==
          doctest::Approx(2.0 * alpha0_12(ms, L1, d1) / (d1 * d1)).epsilon(1e-14));
    CHECK(alpha2_12(ms, L1, d1) < 0.0);
}

TEST_CASE("kbar coefficients are finite and scale with the actions") {
    const auto k = kbar_coefficients(0.4, 0.6, 0.2, 0.5, 0.5, 0.2, 1.0);
    for (double v : k) CHECK(std::isfinite(v));
}
