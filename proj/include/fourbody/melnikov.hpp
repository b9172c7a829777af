#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace fourbody {

/// kappa(x) = sqrt(2/3) (L1^2 / chi) (1 - x / sinh x).
double kappa(double x, double chi, double L1);

/// kappa evaluated at the resonant argument pi Gamma2~ / (A2 L1^2).
double kappa_at_resonance(double Gamma2t, double L1);

/// Truncated real-axis quadrature of the contour integral for L1*: returns
/// the complex value; the real part equals kappa/2 at the resonant argument.
std::complex<double> melnikov_L1_numeric(double Gamma2t, double L1, double T = 40.0,
                                         double tol = 1e-11);

/// Closed forms of the Melnikov potentials.
double melnikov_L2_23(double gamma2t, double psi1t, double Gamma2t, double L1, double delta1);
double melnikov_L5_23(double gamma2t, double psi1t, double gamma3t, double Gamma2t, double L1,
                      double delta1, double delta3);
double melnikov_L2_12(double gamma2t, double Gamma2t, double L1, double A_oct);

/// Regularized time integral along the separatrix of a secular integrand
/// f(Gamma1, gamma1, gamma2~): the positive branch subtracts the t -> +inf
/// saddle orbit (phase offset +arctan 1/chi), the negative branch the
/// t -> -inf one. T defaults to max(40/A2, tail-bound value).
double melnikov_time_quadrature(const std::function<double(double, double, double)>& f,
                                double Gamma2t, double gamma2t0, double L1, double T = 0.0,
                                double tol = 1e-10);

/// Leading-order critical times: omega0 tau* = gamma2~ +- pi/2 with
/// omega0 = 2 alpha0_12 Gamma2~ / L1^2.
std::pair<double, double> critical_times(double gamma2t, double Gamma2t, double L1,
                                         double alpha0 = 1.0);

/// Sampled Melnikov potential over an angle grid with its closed form.
struct MelnikovCurve {
    std::vector<double> angle;
    std::vector<double> numeric;
    std::vector<double> closed;
    double max_abs_dev = 0.0;
};

}  // namespace fourbody
