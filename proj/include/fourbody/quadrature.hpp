#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "fourbody/errors.hpp"

namespace fourbody {

namespace gk15 {

// 15-point Kronrod nodes on [-1, 1] and weights, with the embedded 7-point
// Gauss weights at the odd-index nodes.
inline constexpr double nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

}  // namespace gk15

/// One Gauss-Kronrod 15(7) panel on [a, b]; returns the Kronrod value and
/// writes the |K15 - G7| error estimate.
template <typename T, typename F>
T gk15_panel(const F& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T k{}, g{};
    for (int i = 0; i < 15; ++i) {
        const T fi = f(c + h * gk15::nodes[i]);
        k += gk15::wk[i] * fi;
        if (i % 2 == 1) g += gk15::wg[i / 2] * fi;
    }
    k *= h;
    g *= h;
    err = std::abs(k - g);
    return k;
}

/// Adaptive bisection Gauss-Kronrod quadrature on [a, b].
template <typename T, typename F>
T integrate_adaptive(const F& f, double a, double b, double tol, int max_depth = 40) {
    struct Rec {
        const F& f;
        double tol;
        int max_depth;
        T run(double a, double b, int depth) const {
            double err;
            const T v = gk15_panel<T>(f, a, b, err);
            if (err < tol * std::max(1.0, std::abs(v)) || depth >= max_depth) {
                if (depth >= max_depth && err > 1e3 * tol)
                    throw NumericalError("integrate_adaptive: failed to converge");
                return v;
            }
            const double c = 0.5 * (a + b);
            return run(a, c, depth + 1) + run(c, b, depth + 1);
        }
    };
    return Rec{f, tol, max_depth}.run(a, b, 0);
}

}  // namespace fourbody
