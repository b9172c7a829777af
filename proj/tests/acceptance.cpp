// Acceptance harness: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "fourbody/errors.hpp"
#include "fourbody/frames.hpp"
#include "fourbody/hamiltonians.hpp"
#include "fourbody/kepler.hpp"
#include "fourbody/melnikov.hpp"
#include "fourbody/quadrature.hpp"
#include "fourbody/rk45.hpp"
#include "fourbody/scattering.hpp"
#include "fourbody/separatrix.hpp"
#include "fourbody/simulate.hpp"
#include "../tests/helpers.hpp"

using namespace fourbody;
using namespace fourbody::testing;

namespace {

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail, double seconds) {
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", ok ? "PASS" : "FAIL", idx, name,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename F>
void run(int idx, const char* name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        detail = body(ok);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(idx, name, ok, detail, dt);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// 1. Deprit symplecticity on 100 random in-domain states.
std::string crit1(bool& ok) {
    const MassSet ms = default_masses();
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const JacobiState j = random_hierarchical(rng, ms);
        worst = std::max(worst, verify_deprit_symplectic(j, ms).max_error);
    }
    ok = worst < 1e-5;
    return "max bracket error " + fmt(worst) + " (tol 1e-5, 100 states)";
}

// 2. Averaging oracle on 20 hierarchical states, P2 and P3 integrands.
std::string crit2(bool& ok) {
    const MassSet ms = default_masses();
    std::mt19937_64 rng(1002);
    const AverageSpec spec{128, 128};
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const JacobiState j = random_hierarchical(rng, ms, 0.12);
        const DepritState d = jacobi_to_deprit(j, ms);
        const double e1 = deprit_e(d, 0), e2 = deprit_e(d, 1);
        const double a1 = deprit_a(d, ms, 0), a2 = deprit_a(d, ms, 1);
        const double i12 = inclinations(d).first;

        const double avg2 = average_2angles(
            [&](double l1, double l2) { return pair12_legendre_integrand(d, ms, 2, l1, l2); },
            spec);
        const double c2 = f_quad12_closed(e1, e2, d.gamma[0], i12, a1, a2);
        worst = std::max(worst, std::fabs(avg2 - c2) / std::fabs(c2));

        const double avg3 = average_2angles(
            [&](double l1, double l2) { return pair12_legendre_integrand(d, ms, 3, l1, l2); },
            spec);
        const double c3 =
            f_oct12_closed(e1, e2, d.gamma[0], d.gamma[1], i12, a1, a2, d.Gamma[0], d.L[0]);
        worst = std::max(worst, std::fabs(avg3 - c3) / std::max(std::fabs(c3), 1e-6 * std::fabs(c2)));
    }
    ok = worst < 1e-8;
    return "max relative deviation " + fmt(worst) + " (tol 1e-8, 20 states)";
}

// 3. Separatrix exactness: energy pinning and RK shadowing.
std::string crit3(bool& ok) {
    const double L1 = 1.0;
    double worst_pin = 0.0, worst_shadow = 0.0;
    for (int m = 0; m < 20; ++m) {
        const double g2 = (0.03 + 0.93 * m / 19.0) * L1 * std::sqrt(3.0 / 5.0);
        const SaddleData sd = saddle(g2, L1);
        const double level = g2 * g2 / (L1 * L1);
        for (int k = 0; k < 1000; ++k) {
            const double t = -10.0 / sd.A2 + 20.0 / sd.A2 * k / 999.0;
            const SeparatrixPoint p = separatrix_point(t, g2, 0.4, L1);
            worst_pin =
                std::max(worst_pin, std::fabs(h0_12(p.gamma1, p.Gamma1, g2, L1) - level));
        }
        const SeparatrixPoint p0 = separatrix_point(-5.0 / sd.A2, g2, 0.0, L1);
        std::vector<double> y{p0.gamma1, p0.Gamma1, p0.gamma2t};
        auto field = [&](double, const std::vector<double>& s, std::vector<double>& ds) {
            const Flow012 f = h012_flow(s[0], s[1], g2, L1);
            ds[0] = f.dgamma1;
            ds[1] = f.dGamma1;
            ds[2] = f.dgamma2t;
        };
        auto sink = [&](double t, const std::vector<double>& s) {
            const SeparatrixPoint p = separatrix_point(t, g2, 0.0, L1);
            worst_shadow = std::max({worst_shadow, std::fabs(s[0] - p.gamma1),
                                     std::fabs(s[1] - p.Gamma1), std::fabs(s[2] - p.gamma2t)});
        };
        rk45_integrate(field, -5.0 / sd.A2, 5.0 / sd.A2, y, 1e-12, sink);
    }
    ok = worst_pin < 1e-12 && worst_shadow < 1e-6;
    return "pinning " + fmt(worst_pin) + " (tol 1e-12), shadowing " + fmt(worst_shadow) +
           " (tol 1e-6)";
}

// 4. Melnikov oracle: contour quadrature and time quadratures.
std::string crit4(bool& ok) {
    const double L1 = 1.0, d1 = 0.5, d3 = 0.2;
    const double cap = L1 * std::sqrt(3.0 / 5.0);
    double worst_l1 = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double g2 = (0.05 + 0.70 * k / 19.0) * cap;
        const std::complex<double> num = melnikov_L1_numeric(g2, L1);
        worst_l1 = std::max(worst_l1,
                            std::abs(num - std::complex<double>(
                                               0.5 * kappa_at_resonance(g2, L1), 0.0)));
    }

    const double c1 = d1 * d1, c2c = -(5.0 - 4.0 * d1 * d1);
    double worst_tq = 0.0;
    for (int m = 0; m < 10; ++m) {
        const double g2 = (0.06 + 0.68 * m / 9.0) * cap;
        for (int ia = 0; ia < 4; ++ia) {
            const double g20 = 2.0 * M_PI * ia / 4.0 + 0.2;
            for (int ib = 0; ib < 4; ++ib) {
                const double psi = 2.0 * M_PI * ib / 4.0 + 0.5;
                auto f2 = [&](double G1, double, double g2t) {
                    return std::sqrt(std::max(0.0, G1 * G1 - g2 * g2)) *
                           (c1 * std::cos(psi) * std::cos(g2t) +
                            c2c * std::sin(psi) * std::sin(g2t));
                };
                worst_tq = std::max(worst_tq,
                                    std::fabs(melnikov_time_quadrature(f2, g2, g20, L1) -
                                              melnikov_L2_23(g20, psi, g2, L1, d1)));
                auto f5 = [&](double G1, double, double g2t) {
                    return std::sqrt(std::max(0.0, G1 * G1 - g2 * g2)) *
                           (j1_23(1.2, psi, d1, d3) * std::cos(g2t) +
                            j2_23(1.2, psi, d1, d3) * std::sin(g2t));
                };
                worst_tq = std::max(worst_tq,
                                    std::fabs(melnikov_time_quadrature(f5, g2, g20, L1) -
                                              melnikov_L5_23(g20, psi, 1.2, g2, L1, d1, d3)));
            }
        }
        // Octupole 12 potential: integrate A_oct * H2_12 along the separatrix.
        // H2_12 vanishes on the saddle orbit (e1 = 0), so the integral is
        // absolutely convergent and needs no subtraction.  The closed form
        // corresponds to the companion gamma1 lobe traversed backwards.
        const double A_oct = 0.8;
        const SaddleData sd12 = saddle(g2, L1);
        const double T12 = 90.0 / sd12.A2;
        for (double g20 : {0.5, 2.1}) {
            auto f12 = [&](double t) {
                const SeparatrixPoint sp = separatrix_point(t, g2, 0.0, L1);
                TildeState s{};
                s.gamma1 = sp.gamma1 + M_PI;
                s.Gamma1 = std::min(sp.Gamma1, L1);
                s.gamma2t = g20 - sp.gamma2t;
                s.Gamma2t = g2;
                s.L1 = L1;
                return A_oct * term_value(Term::H2_12, s);
            };
            worst_tq = std::max(worst_tq,
                                std::fabs(integrate_adaptive<double>(f12, -T12, T12, 1e-12) -
                                          melnikov_L2_12(g20, g2, L1, A_oct)));
        }
    }
    ok = worst_l1 < 1e-7 && worst_tq < 1e-6;
    return "L1 quadrature " + fmt(worst_l1) + " (tol 1e-7), time quadratures " + fmt(worst_tq) +
           " (tol 1e-6)";
}

// 5. Phase-shift oracle.
std::string crit5(bool& ok) {
    const double L1 = 1.0;
    double worst_int = 0.0, worst_psi = 0.0;
    for (int m = 0; m < 12; ++m) {
        const double g2 = (0.05 + 0.88 * m / 11.0) * L1 * std::sqrt(3.0 / 5.0);
        const SaddleData sd = saddle(g2, L1);
        const double integral = gamma1sq_deficit_integral(g2, L1);
        const double closed = ((5.0 / 3.0) * g2 * g2 - L1 * L1) * 2.0 / sd.A2;
        worst_int = std::max(worst_int, std::fabs(integral - closed) / std::fabs(closed));
        const double dpsi = -0.5 * (g2 / (L1 * L1)) * integral;
        worst_psi = std::max(worst_psi, std::fabs(dpsi - phase_shift_psi1(g2, L1)));
    }
    ok = worst_int < 1e-9 && worst_psi < 1e-8;
    return "deficit integral " + fmt(worst_int) + " (tol 1e-9), delta-psi " + fmt(worst_psi) +
           " (tol 1e-8)";
}

// 6. Scattering structure: zero means, assembly identity, four windows.
std::string crit6(bool& ok) {
    ScatteringConstants c;  // defaults delta1 = 0.5, delta3 = 0.2
    const double g2 = 0.3;
    const int N = 64;
    double worst_mean = 0.0, worst_assembly = 0.0;
    for (int branch : {+1, -1}) {
        double mean1 = 0.0;
        for (int k = 0; k < N; ++k) {
            const double psi = 2.0 * M_PI * k / N;
            mean1 += jumps_hat(psi, 1.3, g2, branch, c).first;
            double mean3 = 0.0;
            for (int j = 0; j < N; ++j)
                mean3 += jumps_hat(psi, 2.0 * M_PI * j / N, g2, branch, c).second;
            worst_mean = std::max(worst_mean, std::fabs(mean3 / N));
            // assembly identity at each sampled angle
            const ScatteringJump jt = jumps_tilde(psi, 1.3, g2, branch, c);
            const PhiCorrections pc = phi_corrections(psi, 1.3, g2, c);
            const auto [s1, s3] = jumps_hat(psi, 1.3, g2, branch, c);
            worst_assembly =
                std::max({worst_assembly,
                          std::fabs(s1 - (jt.Theta1 + pc.dPhi1_dpsi1 * jt.Delta1)),
                          std::fabs(s3 - (jt.Theta3 + pc.dPhi3_dpsi1 * jt.Delta1))});
        }
        worst_mean = std::max(worst_mean, std::fabs(mean1 / N));
    }
    const auto windows = find_jump_windows(g2, +1, c, {}, 256);
    int found = 0;
    for (const JumpWindow& w : windows) found += w.found ? 1 : 0;
    ok = worst_mean < 1e-12 && worst_assembly < 1e-12 && found == 4;
    return "zero means " + fmt(worst_mean) + ", assembly " + fmt(worst_assembly) +
           " (tol 1e-12), windows " + std::to_string(found) + "/4";
}

// 7. Twist determinant: constant sign, degenerate at L1/sqrt(3).
std::string crit7(bool& ok) {
    ScatteringConstants c;
    const double eps = 1e-2, mu = 1e-3;
    const double cap = c.L1 / std::sqrt(3.0);
    double sign = 0.0;
    bool constant_sign = true;
    double det_mid = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double g2 = (0.05 + (0.99 - 0.05) * k / 199.0) * cap;
        const double det = twist_matrix(g2, c, eps, mu).det_leading;
        if (det == 0.0) constant_sign = false;
        if (sign == 0.0) sign = det > 0.0 ? 1.0 : -1.0;
        if (det * sign <= 0.0) constant_sign = false;
        det_mid = std::max(det_mid, std::fabs(det));
    }
    const double det_cap = std::fabs(twist_matrix(cap, c, eps, mu).det_leading);
    const bool vanishes = det_cap < 1e-10 * det_mid;
    ok = constant_sign && vanishes;
    return std::string("constant sign: ") + (constant_sign ? "yes" : "no") +
           ", |det| at L1/sqrt(3) / max = " + fmt(det_cap / det_mid);
}

// 8. Direct 4BP vs quad-only secular dynamics over one Kozai cycle.
std::string crit8(bool& ok) {
    const MassSet ms = derive_masses(1.0, 1e-4, 1.0, 1e-12);
    std::array<OrbitElements, 3> el;
    el[0] = {1.0, 0.05, 45.0 * M_PI / 180.0, 0.3, 0.6, 0.9};
    el[1] = {20.0, 0.05, 0.0, 0.0, 0.2, 2.1};
    el[2] = {500.0, 0.1, 0.2, 1.0, 0.5, 0.3};
    const JacobiState j0 = jacobi_from_elements(ms, el);
    const CartesianState c0 = jacobi_to_cartesian(j0, ms);
    const DepritState d0 = jacobi_to_deprit(j0, ms);

    // Quadrupole Kozai timescale sets the run length; one full cycle.
    const double P1 = inner_period(c0, ms);
    const double a1 = deprit_a(d0, ms, 0), a2 = deprit_a(d0, ms, 1);
    const double e2 = deprit_e(d0, 1);

    // 1-DOF secular flow in (gamma1, Gamma1): the pair-12 quadrupole term with
    // Gamma2, Psi1 frozen; prefactor -mu1 m2 from the Legendre series.
    const double pref = -ms.mu[1] * ms.m[2];
    const double G2 = d0.Gamma[1], Psi1 = d0.Psi[0], L1 = d0.L[0];
    auto ham = [&](double gamma1, double Gamma1) {
        const double e1 = std::sqrt(std::max(0.0, 1.0 - Gamma1 * Gamma1 / (L1 * L1)));
        const double ci = (Gamma1 * Gamma1 + G2 * G2 - Psi1 * Psi1) / (2.0 * Gamma1 * G2);
        return pref * f_quad12_closed(e1, e2, gamma1, std::acos(std::clamp(ci, -1.0, 1.0)),
                                      a1, a2);
    };
    auto field = [&](double, const std::vector<double>& s, std::vector<double>& ds) {
        const double h = 1e-6;
        ds[0] = (ham(s[0], s[1] + h) - ham(s[0], s[1] - h)) / (2.0 * h);
        ds[1] = -(ham(s[0] + h, s[1]) - ham(s[0] - h, s[1])) / (2.0 * h);
    };

    // Estimate the Kozai period from the linear frequency scale, then refine
    // by locating a full oscillation of Gamma1 in the secular flow.
    const double t_guess = P1 * (ms.M[1] / ms.m[2]) * std::pow(a2 / a1, 3) *
                           std::pow(1.0 - e2 * e2, 1.5);
    std::vector<double> sec_t, sec_gamma, sec_Gamma;
    {
        std::vector<double> y{d0.gamma[0], d0.Gamma[0]};
        auto sink = [&](double t, const std::vector<double>& s) {
            sec_t.push_back(t);
            sec_gamma.push_back(s[0]);
            sec_Gamma.push_back(s[1]);
        };
        rk45_integrate(field, 0.0, 3.0 * t_guess, y, 1e-11, sink);
    }
    // Kozai period: time between the first two maxima of Gamma1.
    double t_period = 0.0;
    {
        std::vector<double> peaks;
        for (size_t k = 1; k + 1 < sec_Gamma.size(); ++k)
            if (sec_Gamma[k] > sec_Gamma[k - 1] && sec_Gamma[k] >= sec_Gamma[k + 1])
                peaks.push_back(sec_t[k]);
        if (peaks.size() >= 2) t_period = peaks[1] - peaks[0];
        else t_period = t_guess;
    }

    // Direct integration over one Kozai period.
    IntegrationConfig cfg;
    cfg.dt = P1 / 2000.0;
    cfg.t_end = t_period;
    cfg.stride = 400;  // 5 samples per inner period
    const FourBodyTrajectory traj = integrate_4bp(c0, ms, cfg);
    const bool monitors_ok =
        traj.monitors.energy_drift < 1e-6 && traj.monitors.angmom_drift < 1e-10;

    // Extract osculating elements, then average over one inner period.
    std::vector<double> t_dir, e1_dir, i12_dir;
    for (const FourBodySample& smp : traj.samples) {
        const DepritState d = jacobi_to_deprit(cartesian_to_jacobi(smp.state, ms), ms);
        t_dir.push_back(smp.t);
        e1_dir.push_back(deprit_e(d, 0));
        i12_dir.push_back(inclinations(d).first);
    }
    const std::vector<double> e1_avg = sliding_average(t_dir, e1_dir, P1);
    const std::vector<double> i12_avg = sliding_average(t_dir, i12_dir, P1);

    // Secular histories at the direct sample times (linear interpolation).
    auto interp = [&](const std::vector<double>& xs, const std::vector<double>& ys, double x) {
        const auto it = std::lower_bound(xs.begin(), xs.end(), x);
        if (it == xs.begin()) return ys.front();
        if (it == xs.end()) return ys.back();
        const size_t hi = static_cast<size_t>(it - xs.begin()), lo = hi - 1;
        const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
        return ys[lo] * (1.0 - w) + ys[hi] * w;
    };
    double e1_lo = 1e9, e1_hi = -1e9, i_lo = 1e9, i_hi = -1e9;
    for (size_t k = 0; k < sec_t.size() && sec_t[k] <= t_period; ++k) {
        const double e1 = std::sqrt(std::max(0.0, 1.0 - sec_Gamma[k] * sec_Gamma[k] /
                                                       (L1 * L1)));
        e1_lo = std::min(e1_lo, e1);
        e1_hi = std::max(e1_hi, e1);
        const double ci = (sec_Gamma[k] * sec_Gamma[k] + G2 * G2 - Psi1 * Psi1) /
                          (2.0 * sec_Gamma[k] * G2);
        const double i12 = std::acos(std::clamp(ci, -1.0, 1.0));
        i_lo = std::min(i_lo, i12);
        i_hi = std::max(i_hi, i12);
    }
    const double e1_range = std::max(e1_hi - e1_lo, 1e-6);
    const double i_range = std::max(i_hi - i_lo, 1e-6);

    double worst = 0.0;
    for (size_t k = 0; k < t_dir.size(); ++k) {
        if (t_dir[k] < 2.0 * P1 || t_dir[k] > t_period - 2.0 * P1) continue;  // window edges
        std::vector<double> yk{0.0, 0.0};
        const double Gsec = interp(sec_t, sec_Gamma, t_dir[k]);
        const double e1s = std::sqrt(std::max(0.0, 1.0 - Gsec * Gsec / (L1 * L1)));
        const double cis = (Gsec * Gsec + G2 * G2 - Psi1 * Psi1) / (2.0 * Gsec * G2);
        const double i12s = std::acos(std::clamp(cis, -1.0, 1.0));
        worst = std::max(worst, std::fabs(e1_avg[k] - e1s) / e1_range);
        worst = std::max(worst, std::fabs(i12_avg[k] - i12s) / i_range);
    }
    ok = worst < 0.05 && monitors_ok;
    return "max element deviation " + fmt(worst) + " of the oscillation range (tol 0.05), H " +
           fmt(traj.monitors.energy_drift) + ", C " + fmt(traj.monitors.angmom_drift);
}

// 9. Kepler/frames micro-suite.
std::string crit9(bool& ok) {
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> ue(0.0, 0.95);
    std::uniform_real_distribution<double> ul(0.0, 2.0 * M_PI);
    double worst_res = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double e = ue(rng), ell = ul(rng);
        const double E = solve_kepler(e, ell);
        worst_res = std::max(worst_res, std::fabs(E - e * std::sin(E) - ell));
    }
    const MassSet ms = default_masses();
    double worst_rt = 0.0;
    for (int k = 0; k < 30; ++k) {
        const JacobiState j = random_hierarchical(rng, ms);
        const DepritState d = jacobi_to_deprit(j, ms);
        const JacobiState j2 = deprit_to_jacobi(d, ms);
        for (int i = 1; i < 4; ++i) {
            worst_rt = std::max(worst_rt,
                                norm(j2.q[i] - j.q[i]) / std::max(1.0, norm(j.q[i])));
            worst_rt = std::max(worst_rt,
                                norm(j2.p[i] - j.p[i]) / std::max(1.0, norm(j.p[i])));
        }
        const CartesianState c = jacobi_to_cartesian(j, ms);
        const JacobiState j3 = cartesian_to_jacobi(c, ms);
        for (int i = 0; i < 4; ++i)
            worst_rt = std::max(worst_rt, norm(j3.q[i] - j.q[i]) + norm(j3.p[i] - j.p[i]));
    }
    ok = worst_res < 1e-13 && worst_rt < 1e-10;
    return "kepler residual " + fmt(worst_res) + " (tol 1e-13), round trips " + fmt(worst_rt) +
           " (tol 1e-10)";
}

}  // namespace

int main() {
    run(1, "deprit symplecticity", crit1);
    run(2, "averaging oracle", crit2);
    run(3, "separatrix exactness", crit3);
    run(4, "melnikov oracle", crit4);
    run(5, "phase-shift oracle", crit5);
    run(6, "scattering structure", crit6);
    run(7, "twist nondegeneracy", crit7);
    run(8, "dynamics consistency", crit8);
    run(9, "kepler/frames micro-suite", crit9);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
