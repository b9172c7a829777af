#pragma once

#include <string>
#include <vector>

#include "fourbody/frames.hpp"
#include "fourbody/hamiltonians.hpp"
#include "fourbody/separatrix.hpp"

namespace fourbody {

/// Shared integration settings for the direct and secular integrators.
struct IntegrationConfig {
    double dt = 0.0;             // leapfrog step; 0 selects P1 / 200
    double tolerance = 1e-10;    // RK45 local tolerance
    double t_end = 0.0;
    int stride = 1;              // record every stride-th accepted step
    unsigned long long seed = 0;
    double collision_factor = 1e-3;  // of the initial inner semimajor axis
};

struct ConservationMonitors {
    double energy_drift = 0.0;    // max |H - H0| / |H0| over samples
    double momentum_drift = 0.0;  // max |P - P0|
    double angmom_drift = 0.0;    // max |C - C0|
};

struct FourBodySample {
    double t = 0.0;
    CartesianState state;
};

struct FourBodyTrajectory {
    std::vector<FourBodySample> samples;
    ConservationMonitors monitors;
    double dt_used = 0.0;
    long long steps = 0;
};

/// Velocity-Verlet integration of the full four-body problem (G = 1).
/// Throws CollisionDetected when a pairwise separation between massive bodies
/// falls below collision_factor * a1(0).
FourBodyTrajectory integrate_4bp(const CartesianState& init, const MassSet& ms,
                                 const IntegrationConfig& cfg);

/// Conserved quantities of the inertial flow.
double total_energy(const CartesianState& s, const MassSet& ms);
Vec3 total_linear_momentum(const CartesianState& s);
Vec3 total_angular_momentum(const CartesianState& s);

/// Osculating semimajor axis of Jacobi pair j and the inner period P1.
double pair_semimajor(const JacobiState& s, const MassSet& ms, int j);
double inner_period(const CartesianState& s, const MassSet& ms);

struct SecularSample {
    double t = 0.0;
    TildeState state;
    double energy = 0.0;
};

struct SecularTrajectory {
    std::vector<SecularSample> samples;
    bool domain_exit = false;
    std::string domain_message;
    double energy_drift = 0.0;  // max |H - H0| relative over samples
};

/// RK45 flow of the secular model in the localized chart. A domain error
/// along the flow ends the run at the last valid sample (reported, not
/// rethrown).
SecularTrajectory integrate_secular(const SecularModel& model, const TildeState& init,
                                    const IntegrationConfig& cfg);

/// Level-set grid of H0_12 on (gamma1, Gamma1) with the saddle/separatrix
/// overlay when it exists.
struct KozaiPortrait {
    std::vector<double> gamma1;  // axis, size n_gamma
    std::vector<double> Gamma1;  // axis, size n_Gamma
    std::vector<double> energy;  // row-major [i_gamma * n_Gamma + i_Gamma]
    bool has_saddle = false;
    double saddle_energy = 0.0;  // Gamma2t^2 / L1^2
    double gamma1_min = 0.0, gamma1_max = 0.0;
    std::vector<SeparatrixPoint> separatrix;  // empty when no saddle
};

KozaiPortrait kozai_portrait(double Gamma2t, double L1, int n_gamma, int n_Gamma);

/// Element/itinerary time series extracted from a direct run.
struct DriftRecord {
    std::vector<double> t;
    std::vector<double> e1, e2, e3;
    std::vector<double> i12, i23;
    std::vector<double> Gamma2t, Psi1t, Gamma3t;
    std::vector<Vec3> C2n;  // normalized C2 vector
    // conserved monitors and cylinder diagnostics, one entry per sample
    std::vector<double> C_norm, Psi2;
    std::vector<double> quad_relation;     // (1 - e2^2)^{3/2} cos i12
    std::vector<double> l2_minus_gamma2;   // for the M^2/(L2-Gamma2)^{3/2} check
    std::vector<double> kozai_constant;    // sqrt(1 - e1^2) cos i12
    bool quad_relation_flag = false;       // true when near-constant over the run
};

DriftRecord drift_experiment(const CartesianState& init, const MassSet& ms,
                             const IntegrationConfig& cfg, double delta1, double delta3);

/// Centered sliding-window mean of a sampled series; window is the averaging
/// width in time (one inner period for secular comparisons).
std::vector<double> sliding_average(const std::vector<double>& t, const std::vector<double>& v,
                                    double window);

}  // namespace fourbody
