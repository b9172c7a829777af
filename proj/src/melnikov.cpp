#include "fourbody/melnikov.hpp"

#include <cmath>

#include "fourbody/errors.hpp"
#include "fourbody/hamiltonians.hpp"
#include "fourbody/quadrature.hpp"
#include "fourbody/separatrix.hpp"

namespace fourbody {

double kappa(double x, double chi, double L1) {
    if (!(chi > 0.0)) throw DomainError("kappa: chi must be positive");
    const double ratio = (std::fabs(x) < 1e-8) ? 1.0 - x * x / 6.0 : x / std::sinh(x);
    return std::sqrt(2.0 / 3.0) * (L1 * L1 / chi) * (1.0 - ratio);
}

double kappa_at_resonance(double Gamma2t, double L1) {
    const SaddleData sd = saddle(Gamma2t, L1);
    return kappa(M_PI * Gamma2t / (sd.A2 * L1 * L1), sd.chi, L1);
}

std::complex<double> melnikov_L1_numeric(double Gamma2t, double L1, double T, double tol) {
    const SaddleData sd = saddle(Gamma2t, L1);
    const double omega = 2.0 * Gamma2t / (sd.A2 * L1 * L1);  // phase rate in tau = A2 t
    const std::complex<double> I(0.0, 1.0);
    auto fplus = [&](double tau) {
        return (std::tanh(tau) - 1.0) * std::exp(I * (omega * tau));
    };
    auto fminus = [&](double tau) {
        return (std::tanh(tau) + 1.0) * std::exp(I * (omega * tau));
    };
    const std::complex<double> ip = integrate_adaptive<std::complex<double>>(fplus, 0.0, T, tol);
    const std::complex<double> im =
        integrate_adaptive<std::complex<double>>(fminus, -T, 0.0, tol);
    return 0.5 * I * std::sqrt(2.0 / 3.0) * (Gamma2t / (sd.A2 * sd.chi)) * (ip + im);
}

double melnikov_L2_23(double gamma2t, double psi1t, double Gamma2t, double L1, double delta1) {
    const double k = kappa_at_resonance(Gamma2t, L1);
    const double c1 = delta1 * delta1;
    const double c2 = -(5.0 - 4.0 * delta1 * delta1);
    return k * (c1 * std::cos(gamma2t) * std::cos(psi1t) +
                c2 * std::sin(gamma2t) * std::sin(psi1t));
}

double melnikov_L5_23(double gamma2t, double psi1t, double gamma3t, double Gamma2t, double L1,
                      double delta1, double delta3) {
    const double k = kappa_at_resonance(Gamma2t, L1);
    return k * (j1_23(gamma3t, psi1t, delta1, delta3) * std::cos(gamma2t) +
                j2_23(gamma3t, psi1t, delta1, delta3) * std::sin(gamma2t));
}

double melnikov_L2_12(double gamma2t, double Gamma2t, double L1, double A_oct) {
    const SaddleData sd = saddle(Gamma2t, L1);
    const double x = M_PI * Gamma2t / (sd.A2 * L1 * L1);
    const double coeff = std::sqrt(3.0 / 2.0) * M_PI * A_oct * std::exp(x) /
                         (6.0 * std::sqrt(15.0) * L1 * (1.0 + std::exp(2.0 * x))) *
                         (24.0 * L1 * L1 - 37.0 * Gamma2t * Gamma2t);
    return coeff * std::sin(gamma2t);
}

double melnikov_time_quadrature(const std::function<double(double, double, double)>& f,
                                double Gamma2t, double gamma2t0, double L1, double T,
                                double tol) {
    const SaddleData sd = saddle(Gamma2t, L1);
    if (T <= 0.0) T = std::max(40.0, -0.5 * std::log(1e-14)) / sd.A2;
    const double drift = 2.0 * Gamma2t / (L1 * L1);
    const double dplus = std::atan(1.0 / sd.chi);

    auto reg = [&](double t, int branch) {
        const SeparatrixPoint p = separatrix_point(t, Gamma2t, gamma2t0, L1);
        const double on = f(p.Gamma1, p.gamma1, p.gamma2t);
        const double g1_star = (branch > 0) ? sd.gamma1_min : sd.gamma1_max;
        const double phase = gamma2t0 + drift * t + ((branch > 0) ? dplus : -dplus);
        return on - f(L1, g1_star, phase);
    };
    // Split each half-line into hyperbolic-time panels so the adaptive rule
    // sees the e^{-2 A2 t} decay one scale at a time.
    double total = 0.0;
    const double seg = 5.0 / sd.A2;
    for (double a = 0.0; a < T; a += seg) {
        const double b = std::min(a + seg, T);
        total += integrate_adaptive<double>([&](double t) { return reg(t, +1); }, a, b, tol);
        total += integrate_adaptive<double>([&](double t) { return reg(t, -1); }, -b, -a, tol);
    }
    return total;
}

std::pair<double, double> critical_times(double gamma2t, double Gamma2t, double L1,
                                         double alpha0) {
    if (!(Gamma2t > 0.0)) throw DomainError("critical_times: Gamma2t must be positive");
    const double omega0 = 2.0 * alpha0 * Gamma2t / (L1 * L1);
    return {(gamma2t + M_PI / 2.0) / omega0, (gamma2t - M_PI / 2.0) / omega0};
}

}  // namespace fourbody
