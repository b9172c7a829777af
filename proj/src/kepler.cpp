#include "fourbody/kepler.hpp"

#include <cmath>

#include "fourbody/errors.hpp"

namespace fourbody {

double wrap_angle(double a) {
    double w = std::fmod(a, 2.0 * M_PI);
    if (w < 0.0) w += 2.0 * M_PI;
    return w;
}

double wrap_pm_pi(double a) {
    double w = std::fmod(a, 2.0 * M_PI);
    if (w > M_PI) w -= 2.0 * M_PI;
    if (w <= -M_PI) w += 2.0 * M_PI;
    return w;
}

EllipseElements::EllipseElements(double a_, double e_, double ell)
    : a(a_), e(e_), mean_anomaly(wrap_angle(ell)) {
    if (!(a > 0.0)) throw DomainError("EllipseElements: semimajor axis must be positive");
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("EllipseElements: eccentricity must be in [0,1)");
}

double solve_kepler(double e, double ell) {
    if (!std::isfinite(e) || !std::isfinite(ell))
        throw DomainError("solve_kepler: non-finite input");
    if (!(e >= 0.0 && e < 1.0))
        throw DomainError("solve_kepler: eccentricity must be in [0,1)");

    const double ell0 = wrap_angle(ell);
    // Bracket: E - e sin E is increasing, and E - e sin E - ell changes sign
    // on [ell - e, ell + e].
    double lo = ell0 - e, hi = ell0 + e;
    double E = ell0 + e * std::sin(ell0);  // classic starter
    for (int it = 0; it < 100; ++it) {
        const double f = E - e * std::sin(E) - ell0;
        if (std::fabs(f) < 1e-14) break;
        if (f > 0.0) hi = E; else lo = E;
        const double fp = 1.0 - e * std::cos(E);
        double step = f / fp;
        double En = E - step;
        if (!(En > lo && En < hi)) En = 0.5 * (lo + hi);  // bisection safeguard
        E = En;
    }
    // Preserve the branch of ell: E and ell differ by the same multiple of 2*pi.
    return E + (ell - ell0);
}

double true_anomaly(double e, double ell) {
    const double E = solve_kepler(e, ell);
    const double k = std::sqrt((1.0 + e) / (1.0 - e));
    // v/2 and E/2 lie in the same half-plane, so atan2 with the tangent
    // half-angle scaling keeps the branch continuous with E.
    const double half = std::atan2(k * std::sin(0.5 * E), std::cos(0.5 * E));
    double v = 2.0 * half;
    // Recover the same 2*pi branch as E.
    v += 2.0 * M_PI * std::round((E - v) / (2.0 * M_PI));
    return v;
}

std::array<double, 4> planar_state(const EllipseElements& el, double mu, double M) {
    if (!(mu > 0.0 && M > 0.0)) throw DomainError("planar_state: masses must be positive");
    const double E = solve_kepler(el.e, el.mean_anomaly);
    const double a = el.a, e = el.e;
    const double r = a * (1.0 - e * std::cos(E));
    const double se = std::sqrt(1.0 - e * e);
    const double qx = a * (std::cos(E) - e);
    const double qy = a * se * std::sin(E);
    // dq/dt from E-dot = sqrt(M/a^3) / (1 - e cos E), momentum p = mu dq/dt.
    const double f = mu * std::sqrt(M * a) / r;
    const double px = -f * std::sin(E);
    const double py = f * se * std::cos(E);
    return {qx, qy, px, py};
}

double eccentricity_from_actions(double L, double Gamma) {
    if (!(Gamma > 0.0)) throw DomainError("eccentricity_from_actions: Gamma must be positive");
    if (!(Gamma <= L)) throw DomainError("eccentricity_from_actions: Gamma exceeds L");
    const double r = Gamma / L;
    return std::sqrt(std::max(0.0, 1.0 - r * r));
}

double action_from_elements(double a, double mu, double M) {
    if (!(a > 0.0 && mu > 0.0 && M > 0.0))
        throw DomainError("action_from_elements: inputs must be positive");
    return mu * std::sqrt(M * a);
}

}  // namespace fourbody
