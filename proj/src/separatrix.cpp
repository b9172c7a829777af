#include "fourbody/separatrix.hpp"

#include <algorithm>
#include <cmath>

#include "fourbody/errors.hpp"
#include "fourbody/quadrature.hpp"

namespace fourbody {

SaddleData saddle(double Gamma2t, double L1) {
    if (!(Gamma2t > 0.0 && L1 > 0.0))
        throw DomainError("saddle: Gamma2t and L1 must be positive");
    const double x = Gamma2t * Gamma2t / (L1 * L1);
    if (!(x < 3.0 / 5.0))
        throw OutOfRange("saddle: Gamma2t must be below L1 sqrt(3/5)");
    SaddleData s;
    s.Gamma2t = Gamma2t;
    s.L1 = L1;
    s.gamma1_min = std::asin(std::sqrt(2.0 / (5.0 * (1.0 - x))));
    s.gamma1_max = M_PI - s.gamma1_min;
    const double root = std::sqrt(1.0 - (5.0 / 3.0) * x);
    s.chi = std::sqrt(2.0 / 3.0) * (Gamma2t / L1) / root;
    s.A2 = (6.0 / L1) * std::sqrt(2.0 / 3.0) * root;
    return s;
}

SeparatrixPoint separatrix_point(double t, double Gamma2t, double gamma2t0, double L1) {
    const SaddleData sd = saddle(Gamma2t, L1);
    const double tau = sd.A2 * t;
    const double th = std::tanh(tau);
    const double sch = 1.0 / std::cosh(tau);
    const double chi2 = sd.chi * sd.chi;
    // cos gamma1 = sqrt(3/5) sinh / sqrt(chi^2 + (1+chi^2) sinh^2), written
    // with tanh and sech so that large |tau| cannot overflow.
    const double cosg = std::sqrt(3.0 / 5.0) * th /
                        std::sqrt(chi2 * sch * sch + (1.0 + chi2) * th * th);
    SeparatrixPoint p;
    p.t = t;
    p.gamma1 = std::acos(std::clamp(cosg, -1.0, 1.0));
    p.Gamma1 = std::sqrt(5.0 / 3.0) *
               std::sqrt(Gamma2t * Gamma2t * sch * sch + (3.0 / 5.0) * L1 * L1 * th * th);
    p.Gamma2t = Gamma2t;
    p.gamma2t0 = gamma2t0;
    p.gamma2t = gamma2t0 + (2.0 * Gamma2t / (L1 * L1)) * t + std::atan(th / sd.chi);
    return p;
}

Flow012 h012_flow(double gamma1, double Gamma1, double Gamma2t, double L1) {
    const double L2 = L1 * L1;
    const double s = std::sin(gamma1);
    const double a = 1.0 - Gamma1 * Gamma1 / L2;
    const double b = 1.0 - Gamma2t * Gamma2t / (Gamma1 * Gamma1);
    Flow012 f;
    f.dgamma1 = (2.0 * Gamma1 / L2) * (5.0 * b * s * s - 2.0) -
                10.0 * a * (Gamma2t * Gamma2t / (Gamma1 * Gamma1 * Gamma1)) * s * s;
    f.dGamma1 = 5.0 * a * b * std::sin(2.0 * gamma1);
    f.dgamma2t = 10.0 * a * (Gamma2t / (Gamma1 * Gamma1)) * s * s + 2.0 * Gamma2t / L2;
    return f;
}

double phase_shift_gamma2(double Gamma2t, double L1) {
    const SaddleData sd = saddle(Gamma2t, L1);
    return 2.0 * std::atan(1.0 / sd.chi);
}

double phase_shift_psi1(double Gamma2t, double L1, double prefactor) {
    const double x = Gamma2t * Gamma2t / (L1 * L1);
    if (!(x < 3.0 / 5.0))
        throw OutOfRange("phase_shift_psi1: Gamma2t must be below L1 sqrt(3/5)");
    return prefactor * (L1 / 6.0) * std::sqrt(3.0 / 2.0) * Gamma2t *
           std::sqrt(1.0 - (5.0 / 3.0) * x);
}

double gamma1sq_deficit_integral(double Gamma2t, double L1) {
    const SaddleData sd = saddle(Gamma2t, L1);
    // The integrand is ((5/3) Gamma2t^2 - L1^2) sech^2(A2 t); pick T so the
    // tail 2 e^{-2 A2 T} |...| / A2 sits below 1e-12 of the scale.
    const double T = 16.0 / sd.A2;
    auto f = [&](double t) {
        const double g = separatrix_point(t, Gamma2t, 0.0, L1).Gamma1;
        return g * g - L1 * L1;
    };
    return integrate_adaptive<double>(f, -T, T, 1e-12);
}

std::vector<SeparatrixPoint> sample_separatrix(double Gamma2t, double gamma2t0, double L1,
                                               double t_min, double t_max, int n) {
    if (n < 2) throw DomainError("sample_separatrix: need at least two samples");
    std::vector<SeparatrixPoint> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = t_min + (t_max - t_min) * i / (n - 1);
        out.push_back(separatrix_point(t, Gamma2t, gamma2t0, L1));
    }
    return out;
}

}  // namespace fourbody
