#pragma once

#include <vector>

namespace fourbody {

/// Saddle structure of H0_12 at fixed Gamma2~: the two equilibrium angles,
/// the shape constant chi and the hyperbolicity rate A2.
struct SaddleData {
    double gamma1_min;
    double gamma1_max;  // pi - gamma1_min
    double chi;
    double A2;
    double Gamma2t;
    double L1;
};

/// Requires 0 < Gamma2~ < L1 sqrt(3/5); throws OutOfRange otherwise.
SaddleData saddle(double Gamma2t, double L1);

/// One sample of the explicit heteroclinic parametrization.
struct SeparatrixPoint {
    double t;
    double gamma1;
    double Gamma1;
    double gamma2t;   // gamma2t0 + linear drift + odd arctan part
    double Gamma2t;
    double gamma2t0;  // branch offset
};

SeparatrixPoint separatrix_point(double t, double Gamma2t, double gamma2t0, double L1);

/// Hamiltonian vector field of H0_12 on (gamma1, Gamma1), plus the drift of
/// gamma2~ driven by dH/dGamma2~.
struct Flow012 {
    double dgamma1;
    double dGamma1;
    double dgamma2t;
};

Flow012 h012_flow(double gamma1, double Gamma1, double Gamma2t, double L1);

/// Homoclinic-excursion phase shifts.
double phase_shift_gamma2(double Gamma2t, double L1);  // 2 arctan(1/chi)
double phase_shift_psi1(double Gamma2t, double L1, double prefactor = 1.0);

/// Regularized integral of (Gamma1(t)^2 - L1^2) along the separatrix,
/// truncated where the sech^2 tail is below 1e-12.
double gamma1sq_deficit_integral(double Gamma2t, double L1);

/// Uniform time sampling of the separatrix for CSV export.
std::vector<SeparatrixPoint> sample_separatrix(double Gamma2t, double gamma2t0, double L1,
                                               double t_min, double t_max, int n);

}  // namespace fourbody
