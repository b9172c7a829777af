#pragma once

#include <array>

namespace fourbody {

/// Wrap an angle to [0, 2*pi).
double wrap_angle(double a);

/// Wrap an angle difference to (-pi, pi].
double wrap_pm_pi(double a);

/// Osculating ellipse in its own plane: semimajor axis, eccentricity and mean
/// anomaly (radians, normalized to [0, 2*pi) on construction).
struct EllipseElements {
    double a;
    double e;
    double mean_anomaly;

    EllipseElements(double a_, double e_, double ell);
};

/// Circular action L = mu * sqrt(M * a) together with its mass constants.
struct KeplerAction {
    double L;
    double mu;
    double M;
};

/// Solve Kepler's equation E - e sin E = ell by safeguarded Newton iteration.
/// Residual below 1e-13.
double solve_kepler(double e, double ell);

/// True anomaly for mean anomaly ell, on the branch continuous with E.
double true_anomaly(double e, double ell);

/// In-plane position and momentum with the pericenter on the first axis.
/// Returns {qx, qy, px, py}.
std::array<double, 4> planar_state(const EllipseElements& el, double mu, double M);

/// e = sqrt(1 - Gamma^2 / L^2); requires 0 < Gamma <= L.
double eccentricity_from_actions(double L, double Gamma);

/// L = mu * sqrt(M * a).
double action_from_elements(double a, double mu, double M);

}  // namespace fourbody
