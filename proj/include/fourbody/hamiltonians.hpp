#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fourbody/frames.hpp"

namespace fourbody {

// ---------------------------------------------------------------------------
// Exact Hamiltonians
// ---------------------------------------------------------------------------

/// F_Kep = -sum_j mu_j^3 M_j^2 / (2 L_j^2).
double f_kep(const DepritState& d, const MassSet& ms);

/// Same Keplerian energy evaluated from Jacobi data: sum p_j^2/(2 mu_j) - mu_j M_j/|q_j|.
double f_kep_jacobi(const JacobiState& s, const MassSet& ms);

/// Full inertial Hamiltonian sum y_j^2/(2 m_j) - sum_{i<j} m_i m_j / |x_i - x_j|.
double inertial_hamiltonian(const CartesianState& s, const MassSet& ms);

/// Perturbing function: the difference between the full interaction and the
/// three nested Kepler problems, written in Jacobi coordinates.
double f_per_exact(const JacobiState& s, const MassSet& ms);

/// Legendre truncation of the pairwise perturbing function.
struct LegendreResult {
    double total = 0.0;  // sum of orders n = 2..nmax
    double n2 = 0.0;     // quadrupolar partial term
    double n3 = 0.0;     // octupolar partial term
};
LegendreResult f_per_legendre(int pair, const JacobiState& s, const MassSet& ms, int nmax);

/// Exact pairwise perturbing function (the limit of f_per_legendre).
double f_per_pair_exact(int pair, const JacobiState& s, const MassSet& ms);

/// Legendre polynomial P_n(x) by recurrence.
double legendre_p(int n, double x);

// ---------------------------------------------------------------------------
// Double averaging
// ---------------------------------------------------------------------------

struct AverageSpec {
    int N1 = 64;
    int N2 = 64;
};

/// Normalized average over T^2 of a smooth periodic integrand by the uniform
/// (trapezoid) rule, spectrally accurate; OpenMP over grid rows with a
/// deterministic fixed-order reduction.
double average_2angles(const std::function<double(double, double)>& f, const AverageSpec& spec);

/// Serial reference implementation with the identical summation order.
double average_2angles_serial(const std::function<double(double, double)>& f,
                              const AverageSpec& spec);

/// Pair-12 Legendre integrand P_n(cos zeta_1) |q1|^n / |q2|^(n+1) as a
/// function of the two mean anomalies, at frozen secular geometry.
double pair12_legendre_integrand(const DepritState& base, const MassSet& ms, int n,
                                 double ell1, double ell2);

// ---------------------------------------------------------------------------
// Closed-form averaged Hamiltonians (normalized averages)
// ---------------------------------------------------------------------------

double f_quad12_closed(double e1, double e2, double gamma1, double i12, double a1, double a2);
double f_oct12_closed(double e1, double e2, double gamma1, double gamma2, double i12,
                      double a1, double a2, double Gamma1, double L1);

// ---------------------------------------------------------------------------
// Expansion terms in the localized variables
// ---------------------------------------------------------------------------

enum class Term { H0_12, H1_12, H2tilde, H2_12, H0_23, H1_23, H2_23, H3tilde, H3_23, H5_23 };

const char* term_name(Term t);
Term term_from_name(const std::string& name);

/// Evaluate one expansion term at the localized state.
double term_value(Term t, const TildeState& s);

/// Gradient in the order (gamma1, Gamma1, gamma2~, Gamma2~, psi1~, Psi1~,
/// gamma3~, Gamma3~): analytic for H0_12, H1_12, H2_23, H3_23; extrapolated
/// central differences elsewhere.
std::array<double, 8> term_gradient(Term t, const TildeState& s);

/// Convenience evaluators for the low-order terms.
double h0_12(double gamma1, double Gamma1, double Gamma2t, double L1);
std::array<double, 3> h0_12_gradient(double gamma1, double Gamma1, double Gamma2t,
                                     double L1);  // d/d(gamma1, Gamma1, Gamma2t)

/// Harmonic coefficients nu_0..nu_3 of H3_23.
std::array<double, 4> nu_coefficients(double delta1, double delta3);

/// The angular factors J1, J2 of H5_23 and the gamma3~ derivative of J2.
double j1_23(double gamma3t, double psi1t, double delta1, double delta3);
double j2_23(double gamma3t, double psi1t, double delta1, double delta3);
double dj2_dgamma3(double gamma3t, double psi1t, double delta1, double delta3);

// ---------------------------------------------------------------------------
// Secular models
// ---------------------------------------------------------------------------

struct SecularModel {
    std::vector<std::pair<Term, double>> terms;  // (term id, prefactor)
};

std::pair<double, std::array<double, 8>> secular_value_and_gradient(const SecularModel& model,
                                                                    const TildeState& s);
double secular_value(const SecularModel& model, const TildeState& s);

// ---------------------------------------------------------------------------
// Printed scale constants and the inner-restriction expansion coefficients
// ---------------------------------------------------------------------------

double alpha0_12(const MassSet& ms, double L1, double delta1);
double alpha1_12(const MassSet& ms, double L1, double delta1);
double alpha_tilde2(const MassSet& ms, double L1, double delta1);
double alpha2_12(const MassSet& ms, double L1, double delta1);

/// The nine K-bar coefficients, row-major in (i, j) with i the mu-power and
/// j the epsilon-power: {K00, K01, K02, K10, K11, K12, K20, K21, K22}.
std::array<double, 9> kbar_coefficients(double Gamma2t, double Psi1t, double Gamma3t,
                                        double delta1, double delta2, double delta3, double L1);

}  // namespace fourbody
