#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "fourbody/vec3.hpp"

namespace fourbody {

/// The four masses with every derived constant of the Jacobi reduction:
/// cumulative masses M_j, mass ratios sigma_{i,j} = m_i / M_j, reduced masses
/// mu_j with 1/mu_j = 1/M_{j-1} + 1/m_j, and the Legendre-series mass factors
/// sigma~_{1,n}, sigma~_{2,n} for n = 2..nmax.
struct MassSet {
    std::array<double, 4> m{};   // m0..m3
    std::array<double, 4> M{};   // M_j = sum_{i<=j} m_i
    std::array<double, 4> mu{};  // mu_1..mu_3 (mu[0] unused)
    int nmax = 8;
    std::vector<double> sigma_tilde1;  // index n-2, n = 2..nmax
    std::vector<double> sigma_tilde2;

    double sigma(int i, int j) const { return m[i] / M[j]; }
};

MassSet derive_masses(double m0, double m1, double m2, double m3, int nmax = 8);

/// Inertial positions and momenta of the four bodies.
struct CartesianState {
    std::array<Vec3, 4> x{};
    std::array<Vec3, 4> y{};
};

/// Jacobi coordinates: q0 is the position of body 0, p0 the total linear
/// momentum; (q_j, p_j), j = 1..3, are the reduced canonical pairs.
struct JacobiState {
    std::array<Vec3, 4> q{};
    std::array<Vec3, 4> p{};
};

/// The 18 angle-action coordinates (ell_j, L_j, gamma_j, Gamma_j, psi_j,
/// Psi_j), j = 1..3, stored 0-based.
struct DepritState {
    std::array<double, 3> ell{};
    std::array<double, 3> L{};
    std::array<double, 3> gamma{};
    std::array<double, 3> Gamma{};
    std::array<double, 3> psi{};
    std::array<double, 3> Psi{};
};

/// Angular momenta and node vectors reconstructed from a DepritState.
struct DepritVectors {
    std::array<Vec3, 3> C{};  // per-body angular momenta
    Vec3 C12{};               // C1 + C2
    Vec3 Ctot{};              // C1 + C2 + C3
    Vec3 nu2{};               // C1 x C2 (also the node of body 1)
    Vec3 nu3{};               // (C1 + C2) x C3
    Vec3 nu4{};               // k3 x Ctot
    std::array<Vec3, 3> pericenter{};  // unit pericenter directions
};

/// Localized secular variables with their fixed parameters.
struct TildeState {
    double gamma1 = 0, Gamma1 = 0;
    double gamma2t = 0, Gamma2t = 0;
    double psi1t = 0, Psi1t = 0;
    double gamma3t = 0, Gamma3t = 0;
    double delta1 = 0.5, delta2 = 0.5, delta3 = 0.2;
    double L1 = 1, L2 = 1, L3 = 1;
};

/// Deprit variables untouched by the tilde reduction, needed to invert it.
struct DepritExtras {
    std::array<double, 3> ell{};
    double psi2 = 0, psi3 = 0, Psi3 = 0;
};

JacobiState cartesian_to_jacobi(const CartesianState& s, const MassSet& ms);
CartesianState jacobi_to_cartesian(const JacobiState& s, const MassSet& ms);

DepritState jacobi_to_deprit(const JacobiState& s, const MassSet& ms);
JacobiState deprit_to_jacobi(const DepritState& d, const MassSet& ms);

/// Rebuild the angular-momentum geometry from the angle-action values alone.
DepritVectors deprit_vectors(const DepritState& d);

/// Osculating a_j and e_j from the Deprit actions.
double deprit_a(const DepritState& d, const MassSet& ms, int j);
double deprit_e(const DepritState& d, int j);

/// Scalar observable of a Jacobi state, with a flag marking angle-valued
/// observables (finite differences then wrap increments to (-pi, pi]).
struct Observable {
    std::function<double(const JacobiState&)> f;
    bool is_angle = false;
};

/// Numerical canonical bracket {f, g} at the state by central differences
/// over the (q_j, p_j), j = 1..3, pairs.
double poisson_bracket(const Observable& f, const Observable& g, const JacobiState& s,
                       double h = 1e-5);

/// Full 18x18 Poisson-bracket matrix of the Deprit coordinates, computed with
/// two finite-difference step sizes and Richardson extrapolation, against the
/// canonical table. Variable order: (ell_j, L_j, gamma_j, Gamma_j, psi_j,
/// Psi_j) grouped per body j = 1..3.
struct SymplecticReport {
    std::array<std::array<double, 18>, 18> bracket{};
    double max_error = 0.0;  // max |bracket - canonical|
};

SymplecticReport verify_deprit_symplectic(const JacobiState& s, const MassSet& ms);

/// Canonical value of the bracket of Deprit variables i, j in the order above.
double canonical_bracket(int i, int j);

TildeState deprit_to_tilde(const DepritState& d, double delta1, double delta3,
                           double L3_hint = 0.0);
DepritState tilde_to_deprit(const TildeState& t, const DepritExtras& extras);

/// Poincare variables (xi, eta) desingularizing the circular inner orbit.
std::pair<double, double> poincare_from_polar(double gamma1, double Gamma1, double L1);
std::pair<double, double> polar_from_poincare(double xi, double eta, double L1);

/// Mutual inclinations (i12, i23) in [0, pi].
std::pair<double, double> inclinations(const DepritState& d);

/// C2 scaled into the unit ball; its norm is sqrt(1 - e2^2).
Vec3 normalized_c2(const DepritState& d, const MassSet& ms);

/// All actions divided by rho; returns the rescaled state and the time factor
/// rho^-2 that the rescaled flow carries.
struct RescaledState {
    DepritState state;
    double time_factor;
};
RescaledState planetary_rescale(const DepritState& d, double rho);

}  // namespace fourbody
