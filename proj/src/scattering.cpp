#include "fourbody/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "fourbody/errors.hpp"
#include "fourbody/hamiltonians.hpp"
#include "fourbody/melnikov.hpp"
#include "fourbody/separatrix.hpp"

namespace fourbody {

namespace {

constexpr double kResonanceTol = 1e-10;

// D = 3 Gamma2^2 / L1^2 - 1; the corrections are singular at D = 0.
double resonance_denominator(double Gamma2, double L1) {
    const double D = 3.0 * Gamma2 * Gamma2 / (L1 * L1) - 1.0;
    if (std::fabs(D) < kResonanceTol)
        throw DomainError("scattering: 3 Gamma2^2 = L1^2 resonance");
    return D;
}

}  // namespace

ScatteringJump jumps_tilde(double psi1t, double gamma3t, double Gamma2t, int branch,
                           const ScatteringConstants& c) {
    if (branch != 1 && branch != -1) throw DomainError("jumps_tilde: branch must be +1 or -1");
    const double L1 = c.L1;
    const double k = kappa_at_resonance(Gamma2t, L1);
    const double c2 = -(5.0 - 4.0 * c.delta1 * c.delta1);
    const double x = Gamma2t * Gamma2t / (L1 * L1);
    const double b = static_cast<double>(branch);

    ScatteringJump j;
    j.branch = branch;
    j.Theta1 = -b * c.alpha2_23 * k * c2 * std::cos(psi1t);
    j.Theta2 = b * c.alpha1_12 * c.alpha2_23 * k * c2 * (3.0 * x - 1.0) *
               (L1 * L1 / (2.0 * Gamma2t)) * std::cos(psi1t);
    j.Theta3 = -b * c.alpha5_23 * k * dj2_dgamma3(gamma3t, psi1t, c.delta1, c.delta3);
    const SaddleData sd = saddle(Gamma2t, L1);
    j.Delta2 = 2.0 * std::atan(1.0 / sd.chi);
    j.Delta1 = c.beta2 * (L1 / 6.0) * std::sqrt(3.0 / 2.0) * Gamma2t *
               std::sqrt(1.0 - (5.0 / 3.0) * x);
    return j;
}

PhiCorrections phi_corrections(double psi1t, double gamma3t, double Gamma2t,
                               const ScatteringConstants& c) {
    const double D = resonance_denominator(Gamma2t, c.L1);
    const double r = c.ratio_a0_23_a1_12;
    const auto nu = nu_coefficients(c.delta1, c.delta3);

    PhiCorrections p;
    p.Phi1 = -r * std::cos(2.0 * psi1t) / (2.0 * D);
    p.dPhi1_dpsi1 = r * std::sin(2.0 * psi1t) / D;
    p.Phi3 = (c.alpha_tilde / D) *
             ((nu[0] / 3.0) * std::cos(gamma3t + 3.0 * psi1t) +
              nu[1] * std::cos(gamma3t + psi1t) - nu[2] * std::cos(gamma3t - psi1t) -
              (nu[3] / 3.0) * std::cos(gamma3t - 3.0 * psi1t));
    p.dPhi3_dpsi1 = -(c.alpha_tilde / D) *
                    (nu[0] * std::sin(gamma3t + 3.0 * psi1t) +
                     nu[1] * std::sin(gamma3t + psi1t) + nu[2] * std::sin(gamma3t - psi1t) +
                     nu[3] * std::sin(gamma3t - 3.0 * psi1t));
    return p;
}

std::pair<double, double> jumps_hat(double psi1h, double gamma3h, double Gamma2h, int branch,
                                    const ScatteringConstants& c) {
    const ScatteringJump j = jumps_tilde(psi1h, gamma3h, Gamma2h, branch, c);
    const PhiCorrections p = phi_corrections(psi1h, gamma3h, Gamma2h, c);
    return {j.Theta1 + p.dPhi1_dpsi1 * j.Delta1, j.Theta3 + p.dPhi3_dpsi1 * j.Delta1};
}

double jumps_hat_S1_closed(double psi1h, double Gamma2h, int branch,
                           const ScatteringConstants& c) {
    const double L1 = c.L1;
    const double k = kappa_at_resonance(Gamma2h, L1);
    const double c2 = -(5.0 - 4.0 * c.delta1 * c.delta1);
    const double x = Gamma2h * Gamma2h / (L1 * L1);
    const double D = resonance_denominator(Gamma2h, L1);
    return -static_cast<double>(branch) * c.alpha2_23 * k * c2 * std::cos(psi1h) +
           c.ratio_a0_23_a1_12 * c.beta2 * (L1 / 6.0) * std::sqrt(3.0 / 2.0) * Gamma2h *
               std::sqrt(1.0 - (5.0 / 3.0) * x) * std::sin(2.0 * psi1h) / D;
}

InnerDerivatives inner_derivatives(double Gamma2h, double Psi1h, double Gamma3h,
                                   const ScatteringConstants& c, double eps, double mu) {
    (void)Psi1h;
    (void)Gamma3h;
    const double L2 = c.L1 * c.L1;
    const double G = Gamma2h;
    const double d1 = c.delta1, d2 = c.delta2, d3 = c.delta3;
    const double d1c = d1 * d1 * d1;
    const double d2c = d2 * d2 * d2;
    const double e3 = eps * eps * eps;
    const double e4 = e3 * eps, e6 = e3 * e3, e7 = e6 * eps, e8 = e7 * eps;
    const double mu6 = std::pow(mu, 6);

    InnerDerivatives d;
    d.grad[0] = e6 * c.C12 * 6.0 * G / (L2 * d1c);
    d.grad[1] = 3.0 * e7 * c.C12 * (L2 - 3.0 * G * G) / (L2 * d1c * d1);
    d.grad[2] = e3 * mu6 * c.C23 * (20.0 - 12.0 * d1 * d1) * d3 / (d1 * d1 * d2c);
    d.hess[0][0] = e6 * c.C12 * 6.0 / (L2 * d1c);
    d.hess[1][1] = 12.0 * e8 * c.C12 * (3.0 * G * G - L2) / (L2 * d1c * d1 * d1);
    d.hess[2][2] = e4 * mu6 * c.C23 * (20.0 - 12.0 * d1 * d1) / (d1 * d1 * d2c);
    d.hess[0][1] = d.hess[1][0] = -e7 * c.C12 * 18.0 * G / (L2 * d1c * d1);
    d.hess[0][2] = d.hess[2][0] = e4 * mu6 * c.C23 * 24.0 * d3 / (d1 * d2c);
    d.hess[1][2] = d.hess[2][1] = -e4 * mu6 * c.C23 * 40.0 * d3 / (d1c * d2c);
    return d;
}

TwistReport twist_matrix(double Gamma2h, const ScatteringConstants& c, double eps, double mu) {
    const double L2 = c.L1 * c.L1;
    const double G = Gamma2h;
    const double G2 = G * G;
    const double d1 = c.delta1, d2 = c.delta2, d3 = c.delta3;
    const double mu6 = std::pow(mu, 6);
    const double d2c = d2 * d2 * d2;

    TwistReport r;
    r.e11 = std::pow(eps, 20) * std::pow(c.C12, 3) * 54.0 * (L2 - 3.0 * G2) * (L2 + G2) /
            (L2 * L2 * L2 * std::pow(d1, 11));
    r.e12 = -std::pow(eps, 16) * mu6 * c.C12 * c.C12 * c.C23 * 72.0 *
            (3.0 * L2 * d1 * d1 + 9.0 * G2 * d1 * d1 - 5.0 * L2 + 5.0 * G2) * d3 /
            (L2 * L2 * std::pow(d1, 9) * d2c);
    r.e22 = -std::pow(eps, 16) * mu6 * c.C12 * c.C12 * c.C23 * 36.0 * G2 *
            (12.0 * d1 * d1 - 20.0) / (L2 * L2 * std::pow(d1, 8) * d2c);

    // Combination rule omega0^3 (Dg)_ij = -g0 gj h0i + g0^2 hij + gi gj h00
    // - g0 gi hj0 with (P0, P1, P2) = (Gamma2^, Psi1^, Gamma3^).
    const InnerDerivatives d = inner_derivatives(Gamma2h, 0.0, 0.0, c, eps, mu);
    auto comb = [&](int i, int j) {
        return -d.grad[0] * d.grad[j] * d.hess[0][i] + d.grad[0] * d.grad[0] * d.hess[i][j] +
               d.grad[i] * d.grad[j] * d.hess[0][0] - d.grad[0] * d.grad[i] * d.hess[j][0];
    };
    r.c11 = comb(1, 1);
    r.c12 = comb(1, 2);
    r.c21 = comb(2, 1);
    r.c22 = comb(2, 2);

    r.det_leading = r.e11 * r.e22;
    r.det_factor = G2 * (L2 - 3.0 * G2) * (L2 + G2) * (12.0 * d1 * d1 - 20.0);
    return r;
}

namespace {

struct RectSearch {
    int pi0 = 0, pi1 = 0, gj0 = 0, gj1 = 0;  // half-open cell index ranges
    int area = 0;
};

// Largest all-true axis rectangle in an n x n mask, torus-aware: the grid is
// tiled twice in each direction and rectangle sides are capped at n cells.
RectSearch largest_rectangle(const std::vector<char>& mask, int n) {
    RectSearch best;
    std::vector<int> height(2 * n, 0);
    for (int row = 0; row < 2 * n; ++row) {
        for (int col = 0; col < 2 * n; ++col) {
            const bool on = mask[(row % n) * n + (col % n)] != 0;
            height[col] = on ? std::min(height[col] + 1, n) : 0;
        }
        // For every column range, the usable height is the running minimum.
        for (int c0 = 0; c0 < 2 * n; ++c0) {
            int h = height[c0];
            for (int c1 = c0; c1 < std::min(c0 + n, 2 * n) && h > 0; ++c1) {
                h = std::min(h, height[c1]);
                const int w = c1 - c0 + 1;
                if (h * w > best.area) {
                    best.area = h * w;
                    best.pi0 = c0;
                    best.pi1 = c1 + 1;
                    best.gj0 = row + 1 - h;
                    best.gj1 = row + 1;
                }
            }
        }
    }
    return best;
}

}  // namespace

std::array<JumpWindow, 4> find_jump_windows(double Gamma2h, int branch,
                                            const ScatteringConstants& c,
                                            const WindowThresholds& th, int initial_grid) {
    const auto nu = nu_coefficients(c.delta1, c.delta3);
    auto s3_dgamma3 = [&](double psi, double g3) {
        const double D = resonance_denominator(Gamma2h, c.L1);
        const ScatteringJump j = jumps_tilde(psi, g3, Gamma2h, branch, c);
        const double k = kappa_at_resonance(Gamma2h, c.L1);
        const double dTheta3 = static_cast<double>(branch) * c.alpha5_23 * k *
                               j2_23(g3, psi, c.delta1, c.delta3);
        const double dPhi3 = -(c.alpha_tilde / D) *
                             (nu[0] * std::cos(g3 + 3.0 * psi) + nu[1] * std::cos(g3 + psi) +
                              nu[2] * std::cos(g3 - psi) + nu[3] * std::cos(g3 - 3.0 * psi));
        return dTheta3 + dPhi3 * j.Delta1;
    };
    auto s1_dpsi = [&](double psi) {
        const double L1 = c.L1;
        const double k = kappa_at_resonance(Gamma2h, L1);
        const double c2 = -(5.0 - 4.0 * c.delta1 * c.delta1);
        const double x = Gamma2h * Gamma2h / (L1 * L1);
        const double D = resonance_denominator(Gamma2h, L1);
        return static_cast<double>(branch) * c.alpha2_23 * k * c2 * std::sin(psi) +
               c.ratio_a0_23_a1_12 * c.beta2 * (L1 / 6.0) * std::sqrt(3.0 / 2.0) * Gamma2h *
                   std::sqrt(1.0 - (5.0 / 3.0) * x) * 2.0 * std::cos(2.0 * psi) / D;
    };

    std::array<JumpWindow, 4> out{};
    bool have_prev = false;
    for (int n = initial_grid; n <= 4096; n *= 2) {
        const double h = 2.0 * M_PI / n;
        // Sample S1, S3 and their transversality derivatives at cell corners;
        // a cell qualifies when all four of its corners do.
        std::vector<double> s1(n), ds1(n);
        for (int i = 0; i < n; ++i) {
            s1[i] = jumps_hat_S1_closed(i * h, Gamma2h, branch, c);
            ds1[i] = s1_dpsi(i * h);
        }
        std::vector<double> s3(static_cast<size_t>(n) * n), ds3(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto sj = jumps_hat(i * h, j * h, Gamma2h, branch, c);
                s3[static_cast<size_t>(i) * n + j] = sj.second;
                ds3[static_cast<size_t>(i) * n + j] = s3_dgamma3(i * h, j * h);
            }

        double max_s1 = 0.0, max_s3 = 0.0, max_ds1 = 0.0, max_ds3 = 0.0;
        for (int i = 0; i < n; ++i) {
            max_s1 = std::max(max_s1, std::fabs(s1[i]));
            max_ds1 = std::max(max_ds1, std::fabs(ds1[i]));
        }
        for (size_t k = 0; k < s3.size(); ++k) {
            max_s3 = std::max(max_s3, std::fabs(s3[k]));
            max_ds3 = std::max(max_ds3, std::fabs(ds3[k]));
        }
        const double nu_b = th.nu > 0.0 ? th.nu : 0.1 * max_s1;
        const double xi_b = th.xi > 0.0 ? th.xi : 0.1 * max_s3;
        const double nuh_b = th.nu_hat > 0.0 ? th.nu_hat : 0.1 * max_ds1;
        const double xih_b = th.xi_hat > 0.0 ? th.xi_hat : 0.1 * max_ds3;
        if (max_s1 == 0.0 && max_s3 == 0.0) return out;  // all windows empty

        std::array<JumpWindow, 4> cur{};
        for (int pat = 0; pat < 4; ++pat) {
            const double sg1 = (pat == 0 || pat == 2) ? +1.0 : -1.0;
            const double sg3 = (pat == 0 || pat == 3) ? +1.0 : -1.0;
            auto corner_ok = [&](int i, int j) {
                const size_t k = static_cast<size_t>(i % n) * n + (j % n);
                return sg1 * s1[i % n] > nu_b && sg3 * s3[k] > xi_b &&
                       std::fabs(ds1[i % n]) > nuh_b && std::fabs(ds3[k]) > xih_b;
            };
            std::vector<char> mask(static_cast<size_t>(n) * n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    mask[static_cast<size_t>(i) * n + j] =
                        corner_ok(i, j) && corner_ok(i + 1, j) && corner_ok(i, j + 1) &&
                        corner_ok(i + 1, j + 1);
            // largest_rectangle works row-major over (gamma3 rows, psi cols);
            // transpose the mask so psi indexes columns.
            std::vector<char> maskT(mask.size(), 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    maskT[static_cast<size_t>(j) * n + i] = mask[static_cast<size_t>(i) * n + j];
            const RectSearch r = largest_rectangle(maskT, n);
            JumpWindow w;
            if (r.area > 0) {
                w.psi_lo = r.pi0 * h;
                w.psi_hi = r.pi1 * h;
                w.g3_lo = r.gj0 * h;
                w.g3_hi = r.gj1 * h;
                w.measure = static_cast<double>(r.area) * h * h;
                // Certify the candidate at its midpoint before accepting it.
                const double pm = 0.5 * (w.psi_lo + w.psi_hi);
                const double gm = 0.5 * (w.g3_lo + w.g3_hi);
                const auto sm = jumps_hat(pm, gm, Gamma2h, branch, c);
                w.found = sg1 * sm.first > nu_b && sg3 * sm.second > xi_b &&
                          std::fabs(s1_dpsi(pm)) > nuh_b &&
                          std::fabs(s3_dgamma3(pm, gm)) > xih_b;
            }
            cur[pat] = w;
        }
        bool stable = have_prev;
        for (int pat = 0; pat < 4 && stable; ++pat) {
            if (cur[pat].found != out[pat].found ||
                std::fabs(cur[pat].measure - out[pat].measure) >
                    0.01 * std::max(cur[pat].measure, out[pat].measure))
                stable = false;
        }
        out = cur;
        have_prev = true;
        if (stable) break;
    }
    return out;
}

}  // namespace fourbody
