#include "fourbody/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fourbody/errors.hpp"
#include "fourbody/rk45.hpp"

namespace fourbody {

namespace {

std::array<Vec3, 4> gravity_forces(const CartesianState& s, const MassSet& ms) {
    std::array<Vec3, 4> f{};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double mm = ms.m[i] * ms.m[j];
            if (mm == 0.0) continue;
            const Vec3 d = s.x[j] - s.x[i];
            const double r = norm(d);
            const Vec3 fij = (mm / (r * r * r)) * d;
            f[i] = f[i] + fij;
            f[j] = f[j] - fij;
        }
    return f;
}

double min_massive_separation(const CartesianState& s, const MassSet& ms) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            if (ms.m[i] == 0.0 || ms.m[j] == 0.0) continue;
            best = std::min(best, norm(s.x[j] - s.x[i]));
        }
    return best;
}

}  // namespace

double total_energy(const CartesianState& s, const MassSet& ms) {
    double h = 0.0;
    for (int i = 0; i < 4; ++i)
        if (ms.m[i] > 0.0) h += dot(s.y[i], s.y[i]) / (2.0 * ms.m[i]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double mm = ms.m[i] * ms.m[j];
            if (mm == 0.0) continue;
            h -= mm / norm(s.x[j] - s.x[i]);
        }
    return h;
}

Vec3 total_linear_momentum(const CartesianState& s) {
    return s.y[0] + s.y[1] + s.y[2] + s.y[3];
}

Vec3 total_angular_momentum(const CartesianState& s) {
    Vec3 c{};
    for (int i = 0; i < 4; ++i) c = c + cross(s.x[i], s.y[i]);
    return c;
}

double pair_semimajor(const JacobiState& s, const MassSet& ms, int j) {
    const double mu = ms.mu[j];
    const double M = ms.M[j];
    const double e = dot(s.p[j], s.p[j]) / (2.0 * mu) - mu * M / norm(s.q[j]);
    if (!(e < 0.0)) throw NonElliptic("pair_semimajor: non-negative two-body energy");
    return -mu * M / (2.0 * e);
}

double inner_period(const CartesianState& s, const MassSet& ms) {
    const JacobiState js = cartesian_to_jacobi(s, ms);
    const double a1 = pair_semimajor(js, ms, 1);
    return 2.0 * M_PI * std::sqrt(a1 * a1 * a1 / ms.M[1]);
}

FourBodyTrajectory integrate_4bp(const CartesianState& init, const MassSet& ms,
                                 const IntegrationConfig& cfg) {
    if (!(cfg.t_end > 0.0)) throw DomainError("integrate_4bp: t_end must be positive");
    const JacobiState js0 = cartesian_to_jacobi(init, ms);
    const double a1 = pair_semimajor(js0, ms, 1);
    const double dt = cfg.dt > 0.0 ? cfg.dt
                                   : 2.0 * M_PI * std::sqrt(a1 * a1 * a1 / ms.M[1]) / 200.0;
    const double r_min = cfg.collision_factor * a1;
    const int stride = std::max(1, cfg.stride);
    const long long nsteps = static_cast<long long>(std::ceil(cfg.t_end / dt - 1e-9));

    FourBodyTrajectory out;
    out.dt_used = dt;
    out.samples.reserve(static_cast<size_t>(nsteps / stride) + 2);

    CartesianState s = init;
    const double h0 = total_energy(s, ms);
    const Vec3 p0 = total_linear_momentum(s);
    const Vec3 c0 = total_angular_momentum(s);

    auto record = [&](double t) {
        out.samples.push_back({t, s});
        const double h = total_energy(s, ms);
        out.monitors.energy_drift =
            std::max(out.monitors.energy_drift, std::fabs(h - h0) / std::fabs(h0));
        out.monitors.momentum_drift =
            std::max(out.monitors.momentum_drift, norm(total_linear_momentum(s) - p0));
        out.monitors.angmom_drift =
            std::max(out.monitors.angmom_drift, norm(total_angular_momentum(s) - c0));
    };
    record(0.0);

    std::array<Vec3, 4> f = gravity_forces(s, ms);
    for (long long k = 0; k < nsteps; ++k) {
        const double h = std::min(dt, cfg.t_end - k * dt);
        for (int i = 0; i < 4; ++i) s.y[i] = s.y[i] + (0.5 * h) * f[i];
        for (int i = 0; i < 4; ++i)
            if (ms.m[i] > 0.0) s.x[i] = s.x[i] + (h / ms.m[i]) * s.y[i];
        f = gravity_forces(s, ms);
        for (int i = 0; i < 4; ++i) s.y[i] = s.y[i] + (0.5 * h) * f[i];
        ++out.steps;
        if (min_massive_separation(s, ms) < r_min)
            throw CollisionDetected("integrate_4bp: separation below threshold at t = " +
                                    std::to_string((k + 1) * dt));
        if ((k + 1) % stride == 0 || k + 1 == nsteps) record(std::min((k + 1) * dt, cfg.t_end));
    }
    return out;
}

SecularTrajectory integrate_secular(const SecularModel& model, const TildeState& init,
                                    const IntegrationConfig& cfg) {
    if (!(cfg.t_end > 0.0)) throw DomainError("integrate_secular: t_end must be positive");
    SecularTrajectory out;

    auto unpack = [&](const std::vector<double>& y) {
        TildeState s = init;
        s.gamma1 = y[0];
        s.Gamma1 = y[1];
        s.gamma2t = y[2];
        s.Gamma2t = y[3];
        s.psi1t = y[4];
        s.Psi1t = y[5];
        s.gamma3t = y[6];
        s.Gamma3t = y[7];
        return s;
    };
    // Canonical pairs (angle, action) are adjacent: dq = +dH/dP, dP = -dH/dq.
    auto field = [&](double /*t*/, const std::vector<double>& y, std::vector<double>& dy) {
        const auto [h, g] = secular_value_and_gradient(model, unpack(y));
        (void)h;
        for (int p = 0; p < 4; ++p) {
            dy[2 * p] = g[2 * p + 1];
            dy[2 * p + 1] = -g[2 * p];
        }
    };

    std::vector<double> y{init.gamma1, init.Gamma1,  init.gamma2t, init.Gamma2t,
                          init.psi1t,  init.Psi1t,   init.gamma3t, init.Gamma3t};
    const double h0 = secular_value(model, init);
    const double scale = std::max(1.0, std::fabs(h0));
    auto sink = [&](double t, const std::vector<double>& yy) {
        const TildeState s = unpack(yy);
        const double h = secular_value(model, s);
        out.samples.push_back({t, s, h});
        out.energy_drift = std::max(out.energy_drift, std::fabs(h - h0) / scale);
    };
    try {
        rk45_integrate(field, 0.0, cfg.t_end, y, cfg.tolerance, sink);
    } catch (const DomainError& e) {
        out.domain_exit = true;
        out.domain_message = e.what();
    }
    return out;
}

KozaiPortrait kozai_portrait(double Gamma2t, double L1, int n_gamma, int n_Gamma) {
    if (n_gamma < 2 || n_Gamma < 2) throw DomainError("kozai_portrait: grid too small");
    KozaiPortrait out;
    out.gamma1.resize(n_gamma);
    out.Gamma1.resize(n_Gamma);
    out.energy.resize(static_cast<size_t>(n_gamma) * n_Gamma);
    const double g_lo = Gamma2t;
    for (int i = 0; i < n_gamma; ++i)
        out.gamma1[i] = 2.0 * M_PI * i / (n_gamma - 1);
    for (int j = 0; j < n_Gamma; ++j)
        out.Gamma1[j] = g_lo + (L1 - g_lo) * j / (n_Gamma - 1);
    for (int i = 0; i < n_gamma; ++i)
        for (int j = 0; j < n_Gamma; ++j)
            out.energy[static_cast<size_t>(i) * n_Gamma + j] =
                h0_12(out.gamma1[i], out.Gamma1[j], Gamma2t, L1);

    if (Gamma2t < L1 * std::sqrt(3.0 / 5.0)) {
        const SaddleData sd = saddle(Gamma2t, L1);
        out.has_saddle = true;
        out.saddle_energy = Gamma2t * Gamma2t / (L1 * L1);
        out.gamma1_min = sd.gamma1_min;
        out.gamma1_max = sd.gamma1_max;
        out.separatrix = sample_separatrix(Gamma2t, 0.0, L1, -8.0 / sd.A2, 8.0 / sd.A2, 401);
    }
    return out;
}

DriftRecord drift_experiment(const CartesianState& init, const MassSet& ms,
                             const IntegrationConfig& cfg, double delta1, double delta3) {
    const FourBodyTrajectory traj = integrate_4bp(init, ms, cfg);
    DriftRecord rec;
    rec.t.reserve(traj.samples.size());
    for (const FourBodySample& smp : traj.samples) {
        const JacobiState js = cartesian_to_jacobi(smp.state, ms);
        const DepritState d = jacobi_to_deprit(js, ms);
        const TildeState tl = deprit_to_tilde(d, delta1, delta3);
        const auto [i12, i23] = inclinations(d);
        const double e1 = deprit_e(d, 1), e2 = deprit_e(d, 2), e3 = deprit_e(d, 3);
        rec.t.push_back(smp.t);
        rec.e1.push_back(e1);
        rec.e2.push_back(e2);
        rec.e3.push_back(e3);
        rec.i12.push_back(i12);
        rec.i23.push_back(i23);
        rec.Gamma2t.push_back(tl.Gamma2t);
        rec.Psi1t.push_back(tl.Psi1t);
        rec.Gamma3t.push_back(tl.Gamma3t);
        rec.C2n.push_back(normalized_c2(d, ms));
        rec.C_norm.push_back(d.Psi[1]);
        rec.Psi2.push_back(d.Psi[1]);
        rec.quad_relation.push_back(std::pow(1.0 - e2 * e2, 1.5) * std::cos(i12));
        rec.l2_minus_gamma2.push_back(d.L[1] - d.Gamma[1]);
        rec.kozai_constant.push_back(std::sqrt(1.0 - e1 * e1) * std::cos(i12));
    }
    // Ctot norm is Psi2 by construction; also track it from Cartesian data.
    for (size_t k = 0; k < traj.samples.size(); ++k)
        rec.C_norm[k] = norm(total_angular_momentum(traj.samples[k].state));
    if (!rec.quad_relation.empty()) {
        const auto [lo, hi] =
            std::minmax_element(rec.quad_relation.begin(), rec.quad_relation.end());
        const double span = std::fabs(*hi - *lo);
        rec.quad_relation_flag = span < 0.05 * std::max(1e-12, std::fabs(*hi) + std::fabs(*lo));
    }
    return rec;
}

std::vector<double> sliding_average(const std::vector<double>& t, const std::vector<double>& v,
                                    double window) {
    if (t.size() != v.size()) throw DomainError("sliding_average: size mismatch");
    std::vector<double> out(v.size(), 0.0);
    size_t lo = 0, hi = 0;
    for (size_t k = 0; k < v.size(); ++k) {
        // small slack so roundoff in the sample times cannot drop an endpoint
        const double slack = 1e-9 * window;
        const double a = t[k] - window / 2.0 - slack, b = t[k] + window / 2.0 + slack;
        while (lo < v.size() && t[lo] < a) ++lo;
        if (hi < lo) hi = lo;
        while (hi + 1 < v.size() && t[hi + 1] <= b) ++hi;
        if (hi <= lo) {
            out[k] = v[k];
            continue;
        }
        // trapezoid average keeps periodic content from biasing the window
        double acc = 0.0;
        for (size_t i = lo; i < hi; ++i)
            acc += 0.5 * (v[i] + v[i + 1]) * (t[i + 1] - t[i]);
        out[k] = acc / (t[hi] - t[lo]);
    }
    return out;
}

}  // namespace fourbody
