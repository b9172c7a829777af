#pragma once

#include <array>
#include <utility>
#include <vector>

namespace fourbody {

/// Constants the closed-form jump expressions depend on. The ones whose
/// numeric values are never printed (the alpha family, beta2, alpha~, C12,
/// C23) default to 1; every invariant tested is independent of them.
struct ScatteringConstants {
    double L1 = 1.0;
    double delta1 = 0.5;
    double delta2 = 0.5;
    double delta3 = 0.2;
    double alpha1_12 = 1.0;
    double alpha2_23 = 1.0;
    double alpha5_23 = 1.0;
    double ratio_a0_23_a1_12 = 1.0;  // alpha0_23 / alpha1_12
    double alpha_tilde = 1.0;
    double beta2 = 1.0;
    double C12 = 1.0;
    double C23 = 1.0;
};

/// First-order scattering-map jump in the localized variables. Scale
/// prefactors are kept symbolic as (i, j) exponent pairs meaning L2^i / L3^j.
struct ScatteringJump {
    int branch = +1;
    double Theta1 = 0.0;  // jump of Psi1~, scale (9, 6)
    double Theta2 = 0.0;  // jump of Gamma2~, scale (8, 6)
    double Theta3 = 0.0;  // jump of Gamma3~, scale (11, 8)
    double Delta2 = 0.0;  // shift of gamma2~, scale (0, 0)
    double Delta1 = 0.0;  // shift of psi1~, scale (-2, 0)
    std::array<std::pair<int, int>, 5> scales{
        {{9, 6}, {8, 6}, {11, 8}, {0, 0}, {-2, 0}}};
};

ScatteringJump jumps_tilde(double psi1t, double gamma3t, double Gamma2t, int branch,
                           const ScatteringConstants& c);

/// First-order averaging corrections (Phi1, Phi3) and their psi1-derivatives.
struct PhiCorrections {
    double Phi1 = 0.0;
    double Phi3 = 0.0;
    double dPhi1_dpsi1 = 0.0;
    double dPhi3_dpsi1 = 0.0;
};

PhiCorrections phi_corrections(double psi1t, double gamma3t, double Gamma2t,
                               const ScatteringConstants& c);

/// Jumps in the averaged (hat) variables, assembled by the composition rule
/// S = Theta + dPhi/dpsi1 * Delta1.
std::pair<double, double> jumps_hat(double psi1h, double gamma3h, double Gamma2h, int branch,
                                    const ScatteringConstants& c);

/// The printed closed form of S1 (equals the composition identically).
double jumps_hat_S1_closed(double psi1h, double Gamma2h, int branch,
                           const ScatteringConstants& c);

/// Leading first and second derivatives of the inner Hamiltonian restriction
/// with respect to (Gamma2^, Psi1^, Gamma3^).
struct InnerDerivatives {
    std::array<double, 3> grad{};
    std::array<std::array<double, 3>, 3> hess{};
};

InnerDerivatives inner_derivatives(double Gamma2h, double Psi1h, double Gamma3h,
                                   const ScatteringConstants& c, double eps, double mu);

/// Leading entries of omega0^3 * Dg, both from the printed formulas and from
/// the derivative-combination rule, plus the leading determinant.
struct TwistReport {
    double e11 = 0.0, e12 = 0.0, e22 = 0.0;  // printed leading entries
    double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;  // from inner_derivatives
    double det_leading = 0.0;  // e11 * e22 (the printed leading determinant)
    double det_factor = 0.0;   // Gamma^2 (L^2-3G^2)(L^2+G^2)(12 d1^2-20)
    const char* top_eigen_order = "eps^2";
    const char* bottom_eigen_order = "eps^-2 mu^6";
};

TwistReport twist_matrix(double Gamma2h, const ScatteringConstants& c, double eps, double mu);

/// Grid search for the four sign-pattern windows of (S1, S3) on the torus.
struct JumpWindow {
    bool found = false;
    double psi_lo = 0.0, psi_hi = 0.0;
    double g3_lo = 0.0, g3_hi = 0.0;
    double measure = 0.0;
};

struct WindowThresholds {
    double nu = 0.0;      // lower bound on |S1|; 0 selects 0.1 * max |S1|
    double xi = 0.0;      // lower bound on |S3|
    double nu_hat = 0.0;  // lower bound on |dS1/dpsi|
    double xi_hat = 0.0;  // lower bound on |dS3/dgamma3|
};

std::array<JumpWindow, 4> find_jump_windows(double Gamma2h, int branch,
                                            const ScatteringConstants& c,
                                            const WindowThresholds& th = {},
                                            int initial_grid = 256);

}  // namespace fourbody
