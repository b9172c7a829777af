#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fourbody/errors.hpp"

namespace fourbody {

/// Embedded Dormand-Prince 5(4) integrator with PI-free step control.
/// Integrates y' = f(t, y) from t0 to t1; calls sink(t, y) after every
/// accepted step (and once at t0).
inline void rk45_integrate(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& f,
    double t0, double t1, std::vector<double> y, double tol,
    const std::function<void(double, const std::vector<double>&)>& sink) {
    static const double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static const double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double b4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const int n = static_cast<int>(y.size());
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::max(1e-10, 1e-3 * std::fabs(t1 - t0));
    std::vector<std::vector<double>> k(7, std::vector<double>(n));
    std::vector<double> ytmp(n), y5(n), y4(n);

    if (sink) sink(t, y);
    int steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > 100000000) throw NumericalError("rk45: step limit exceeded");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        f(t, y, k[0]);
        for (int s = 1; s < 7; ++s) {
            for (int i = 0; i < n; ++i) {
                double acc = y[i];
                for (int j = 0; j < s; ++j) acc += h * a[s][j] * k[j][i];
                ytmp[i] = acc;
            }
            f(t + c[s] * h, ytmp, k[s]);
        }
        double errnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            double d5 = y[i], d4 = y[i];
            for (int s = 0; s < 7; ++s) {
                d5 += h * b5[s] * k[s][i];
                d4 += h * b4[s] * k[s][i];
            }
            y5[i] = d5;
            y4[i] = d4;
            const double sc = tol * (1.0 + std::fabs(y[i]));
            const double e = (d5 - d4) / sc;
            errnorm += e * e;
        }
        errnorm = std::sqrt(errnorm / n);
        if (errnorm <= 1.0) {
            t += h;
            y = y5;
            if (sink) sink(t, y);
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(errnorm, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t)))
            throw NumericalError("rk45: step size underflow");
    }
}

}  // namespace fourbody
