// Command-line front end: every subcommand reads one JSON config, writes its
// outputs under --out, and records a single manifest for the run.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fourbody/errors.hpp"
#include "fourbody/frames.hpp"
#include "fourbody/hamiltonians.hpp"
#include "fourbody/json_io.hpp"
#include "fourbody/melnikov.hpp"
#include "fourbody/scattering.hpp"
#include "fourbody/separatrix.hpp"
#include "fourbody/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fourbody;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CommonOpts {
    std::string config;
    std::string out_dir = ".";
    unsigned long long seed = 0;
    bool check_symplectic = false;
    std::string grid;  // "NxM"
};

std::pair<int, int> parse_grid(const std::string& g, int n_default, int m_default) {
    if (g.empty()) return {n_default, m_default};
    int n = 0, m = 0;
    if (std::sscanf(g.c_str(), "%dx%d", &n, &m) != 2 || n < 2 || m < 2)
        throw DomainError("--grid expects NxM with N, M >= 2");
    return {n, m};
}

/// Convert a tagged state to the target system through the Jacobi chart.
TaggedState convert_state(const TaggedState& in, const std::string& target, const MassSet& ms,
                          double delta1, double delta3) {
    JacobiState js;
    if (in.coordinate_system == "cartesian") js = cartesian_to_jacobi(in.cart, ms);
    else if (in.coordinate_system == "jacobi") js = in.jac;
    else if (in.coordinate_system == "deprit") js = deprit_to_jacobi(in.dep, ms);
    else if (in.coordinate_system == "tilde")
        throw DomainError("transform: tilde input is not invertible without node data");
    else throw DomainError("transform: unknown input system");

    TaggedState out;
    out.coordinate_system = target;
    if (target == "cartesian") out.cart = jacobi_to_cartesian(js, ms);
    else if (target == "jacobi") out.jac = js;
    else if (target == "deprit") out.dep = jacobi_to_deprit(js, ms);
    else if (target == "tilde") out.til = deprit_to_tilde(jacobi_to_deprit(js, ms), delta1, delta3);
    else throw DomainError("transform: unknown target system '" + target + "'");
    return out;
}

int cmd_transform(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    const MassSet ms = masses_from_json(cfg);
    const TaggedState in = state_from_json(cfg.at("state"));
    const std::string target = cfg.at("target").get<std::string>();
    const double d1 = cfg.value("delta1", 0.5), d3 = cfg.value("delta3", 0.2);
    const TaggedState out = convert_state(in, target, ms, d1, d3);

    json j = state_to_json(out);
    if (opt.check_symplectic) {
        JacobiState js = (in.coordinate_system == "cartesian")
                             ? cartesian_to_jacobi(in.cart, ms)
                             : (in.coordinate_system == "jacobi" ? in.jac
                                                                 : deprit_to_jacobi(in.dep, ms));
        const SymplecticReport rep = verify_deprit_symplectic(js, ms);
        j["symplectic_max_error"] = rep.max_error;
    }
    const std::string path = (fs::path(opt.out_dir) / "state.json").string();
    std::ofstream f(path);
    f << j.dump(2) << "\n";
    man.outputs.push_back(path);
    return 0;
}

int cmd_average(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    const MassSet ms = masses_from_json(cfg);
    TaggedState in = state_from_json(cfg.at("state"));
    if (in.coordinate_system != "deprit")
        throw DomainError("average: state must be given in the deprit system");
    const DepritState d = in.dep;
    const int order = cfg.value("order", 2);
    if (order != 2 && order != 3) throw DomainError("average: order must be 2 or 3");
    auto [n1, n2] = parse_grid(opt.grid, cfg.value("N1", 64), cfg.value("N2", 64));

    AverageSpec spec{n1, n2};
    const double avg = average_2angles(
        [&](double l1, double l2) { return pair12_legendre_integrand(d, ms, order, l1, l2); },
        spec);
    const double e1 = deprit_e(d, 0), e2 = deprit_e(d, 1);
    const double a1 = deprit_a(d, ms, 0), a2 = deprit_a(d, ms, 1);
    const auto [i12, i23] = inclinations(d);
    (void)i23;
    const double closed =
        (order == 2) ? f_quad12_closed(e1, e2, d.gamma[0], i12, a1, a2)
                     : f_oct12_closed(e1, e2, d.gamma[0], d.gamma[1], i12, a1, a2, d.Gamma[0],
                                      d.L[0]);
    const double dev = std::fabs(avg - closed) / std::max(1e-300, std::fabs(closed));
    json j{{"order", order},      {"N1", n1},     {"N2", n2},
           {"average", avg},      {"closed_form", closed},
           {"relative_deviation", dev}};
    const std::string path = (fs::path(opt.out_dir) / "average.json").string();
    std::ofstream f(path);
    f << j.dump(2) << "\n";
    man.outputs.push_back(path);
    std::cout << "relative deviation = " << dev << "\n";
    return 0;
}

int cmd_melnikov(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    const double L1 = cfg.value("L1", 1.0);
    const double d1 = cfg.value("delta1", 0.5), d3 = cfg.value("delta3", 0.2);
    const double A_oct = cfg.value("A_oct", 1.0);
    const int n_values = cfg.value("n_values", 20);
    const int n_angles = cfg.value("n_angles", 64);
    const double hi = 0.75 * L1 * std::sqrt(3.0 / 5.0);
    const double lo = 0.05 * L1 * std::sqrt(3.0 / 5.0);

    std::vector<std::vector<double>> rows;
    double max_dev = 0.0;
    for (int k = 0; k < n_values; ++k) {
        const double g2 = lo + (hi - lo) * k / (n_values - 1);
        const std::complex<double> num = melnikov_L1_numeric(g2, L1);
        const double half_kappa = 0.5 * kappa_at_resonance(g2, L1);
        const double dev = std::abs(num - std::complex<double>(half_kappa, 0.0));
        max_dev = std::max(max_dev, dev);
        rows.push_back({g2, num.real(), num.imag(), half_kappa, dev});
    }
    const std::string curve = (fs::path(opt.out_dir) / "melnikov_L1.csv").string();
    write_csv(curve, "Gamma2t,L1_re,L1_im,half_kappa,abs_deviation", rows);
    man.outputs.push_back(curve);

    // Angle sweeps of the closed-form potentials at the midpoint Gamma2t.
    const double g2m = 0.5 * (lo + hi);
    std::vector<std::vector<double>> arows;
    for (int k = 0; k < n_angles; ++k) {
        const double ang = 2.0 * M_PI * k / n_angles;
        arows.push_back({ang, melnikov_L2_23(ang, ang, g2m, L1, d1),
                         melnikov_L5_23(ang, ang, 0.0, g2m, L1, d1, d3),
                         melnikov_L2_12(ang, g2m, L1, A_oct)});
    }
    const std::string acurve = (fs::path(opt.out_dir) / "melnikov_angles.csv").string();
    write_csv(acurve, "angle,L2_23,L5_23,L2_12", arows);
    man.outputs.push_back(acurve);

    json j{{"max_L1_deviation", max_dev}, {"n_values", n_values}};
    const std::string summary = (fs::path(opt.out_dir) / "melnikov_summary.json").string();
    std::ofstream f(summary);
    f << j.dump(2) << "\n";
    man.outputs.push_back(summary);
    std::cout << "max closed-form deviation = " << max_dev << "\n";
    return 0;
}

int cmd_portrait(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    const double g2 = cfg.at("Gamma2t").get<double>();
    const double L1 = cfg.value("L1", 1.0);
    auto [n, m] = parse_grid(opt.grid, 64, 64);
    const KozaiPortrait p = kozai_portrait(g2, L1, n, m);

    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k)
            rows.push_back({p.gamma1[i], p.Gamma1[k],
                            p.energy[static_cast<size_t>(i) * m + k]});
    const std::string grid_path = (fs::path(opt.out_dir) / "portrait.csv").string();
    write_csv(grid_path, "gamma1_rad,Gamma1,H0_12", rows);
    man.outputs.push_back(grid_path);

    if (p.has_saddle) {
        std::vector<std::vector<double>> srows;
        for (const SeparatrixPoint& q : p.separatrix)
            srows.push_back({q.t, q.gamma1, q.Gamma1, q.gamma2t});
        const std::string sep_path = (fs::path(opt.out_dir) / "separatrix_overlay.csv").string();
        write_csv(sep_path, "t,gamma1_rad,Gamma1,gamma2t_rad", srows);
        man.outputs.push_back(sep_path);
    } else {
        std::cerr << "warning: no saddle for Gamma2t >= L1 sqrt(3/5); level sets only\n";
    }
    json j{{"has_saddle", p.has_saddle}, {"saddle_energy", p.saddle_energy}};
    const std::string summary = (fs::path(opt.out_dir) / "portrait_summary.json").string();
    std::ofstream f(summary);
    f << j.dump(2) << "\n";
    man.outputs.push_back(summary);
    return 0;
}

int cmd_separatrix(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    const double g2 = cfg.at("Gamma2t").get<double>();
    const double L1 = cfg.value("L1", 1.0);
    const double g20 = cfg.value("gamma2t0", 0.0);
    const double span = cfg.value("t_span", 10.0);  // units of 1/A2
    const int n = cfg.value("n_samples", 1001);
    const SaddleData sd = saddle(g2, L1);
    const auto pts = sample_separatrix(g2, g20, L1, -span / sd.A2, span / sd.A2, n);
    std::vector<std::vector<double>> rows;
    for (const SeparatrixPoint& q : pts) rows.push_back({q.t, q.gamma1, q.Gamma1, q.gamma2t});
    const std::string path = (fs::path(opt.out_dir) / "separatrix.csv").string();
    write_csv(path, "t,gamma1_rad,Gamma1,gamma2t_rad", rows);
    man.outputs.push_back(path);
    return 0;
}

int cmd_scattering(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    ScatteringConstants sc;
    sc.L1 = cfg.value("L1", 1.0);
    sc.delta1 = cfg.value("delta1", 0.5);
    sc.delta2 = cfg.value("delta2", 0.5);
    sc.delta3 = cfg.value("delta3", 0.2);
    const double g2 = cfg.at("Gamma2h").get<double>();
    const int branch = cfg.value("branch", 1);
    const double psi1 = cfg.value("psi1", 0.3);
    const double gamma3 = cfg.value("gamma3", 0.7);
    const double eps = cfg.value("eps", 1e-2);
    const double mu = cfg.value("mu", 1e-3);

    const ScatteringJump jt = jumps_tilde(psi1, gamma3, g2, branch, sc);
    const auto [s1, s3] = jumps_hat(psi1, gamma3, g2, branch, sc);
    const TwistReport tw = twist_matrix(g2, sc, eps, mu);
    auto [gn, gm] = parse_grid(opt.grid, 256, 256);
    (void)gm;
    const auto windows = find_jump_windows(g2, branch, sc, {}, gn);

    json j;
    j["jumps_tilde"] = {{"Theta1", jt.Theta1}, {"Theta2", jt.Theta2}, {"Theta3", jt.Theta3},
                        {"Delta1", jt.Delta1}, {"Delta2", jt.Delta2}, {"branch", jt.branch}};
    j["jumps_hat"] = {{"S1", s1}, {"S3", s3}};
    j["twist"] = {{"e11", tw.e11}, {"e12", tw.e12}, {"e22", tw.e22},
                  {"det_leading", tw.det_leading}};
    json wj = json::array();
    for (const JumpWindow& w : windows)
        wj.push_back(json{{"found", w.found}, {"psi_lo", w.psi_lo}, {"psi_hi", w.psi_hi},
                          {"g3_lo", w.g3_lo}, {"g3_hi", w.g3_hi}, {"measure", w.measure}});
    j["windows"] = wj;
    const std::string path = (fs::path(opt.out_dir) / "scattering.json").string();
    std::ofstream f(path);
    f << j.dump(2) << "\n";
    man.outputs.push_back(path);
    return 0;
}

int cmd_simulate(const CommonOpts& opt, const json& cfg, RunManifest& man) {
    IntegrationConfig ic;
    ic.dt = cfg.value("dt", 0.0);
    ic.tolerance = cfg.value("tolerance", 1e-10);
    ic.t_end = cfg.at("t_end").get<double>();
    ic.stride = cfg.value("stride", 1);
    ic.seed = opt.seed;
    const std::string mode = cfg.value("mode", "direct");

    if (mode == "direct") {
        const MassSet ms = masses_from_json(cfg);
        const TaggedState in = state_from_json(cfg.at("state"));
        if (in.coordinate_system != "cartesian")
            throw DomainError("simulate: direct mode expects a cartesian state");
        const FourBodyTrajectory traj = integrate_4bp(in.cart, ms, ic);
        std::vector<std::vector<double>> rows;
        for (const FourBodySample& s : traj.samples) {
            std::vector<double> row{s.t};
            for (int i = 0; i < 4; ++i) {
                row.push_back(s.state.x[i].x);
                row.push_back(s.state.x[i].y);
                row.push_back(s.state.x[i].z);
            }
            row.push_back(total_energy(s.state, ms));
            rows.push_back(std::move(row));
        }
        const std::string path = (fs::path(opt.out_dir) / "trajectory.csv").string();
        write_csv(path,
                  "t,x0,y0,z0,x1,y1,z1,x2,y2,z2,x3,y3,z3,energy", rows);
        man.outputs.push_back(path);
        json j{{"steps", traj.steps},
               {"dt", traj.dt_used},
               {"energy_drift", traj.monitors.energy_drift},
               {"momentum_drift", traj.monitors.momentum_drift},
               {"angmom_drift", traj.monitors.angmom_drift}};
        const std::string summary = (fs::path(opt.out_dir) / "simulate_summary.json").string();
        std::ofstream f(summary);
        f << j.dump(2) << "\n";
        man.outputs.push_back(summary);
    } else if (mode == "secular") {
        const SecularModel model = model_from_json(cfg.at("model"));
        const TaggedState in = state_from_json(cfg.at("state"));
        if (in.coordinate_system != "tilde")
            throw DomainError("simulate: secular mode expects a tilde state");
        const SecularTrajectory traj = integrate_secular(model, in.til, ic);
        std::vector<std::vector<double>> rows;
        for (const SecularSample& s : traj.samples)
            rows.push_back({s.t, s.state.gamma1, s.state.Gamma1, s.state.gamma2t,
                            s.state.Gamma2t, s.state.psi1t, s.state.Psi1t, s.state.gamma3t,
                            s.state.Gamma3t, s.energy});
        const std::string path = (fs::path(opt.out_dir) / "trajectory.csv").string();
        write_csv(path, "t,gamma1,Gamma1,gamma2t,Gamma2t,psi1t,Psi1t,gamma3t,Gamma3t,energy",
                  rows);
        man.outputs.push_back(path);
        json j{{"energy_drift", traj.energy_drift},
               {"domain_exit", traj.domain_exit},
               {"domain_message", traj.domain_message},
               {"samples", traj.samples.size()}};
        const std::string summary = (fs::path(opt.out_dir) / "simulate_summary.json").string();
        std::ofstream f(summary);
        f << j.dump(2) << "\n";
        man.outputs.push_back(summary);
    } else {
        throw DomainError("simulate: mode must be 'direct' or 'secular'");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fourbody: hierarchical four-body secular dynamics toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    const std::vector<std::string> names = {"transform", "average",    "melnikov", "portrait",
                                            "separatrix", "scattering", "simulate"};
    for (const std::string& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config, "JSON config file")->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "RNG seed for sampled configs");
        sub->add_flag("--check-symplectic", opt.check_symplectic,
                      "append the Poisson-bracket report");
        sub->add_option("--grid", opt.grid, "grid size NxM");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t_start = std::chrono::steady_clock::now();
    try {
        fs::create_directories(opt.out_dir);
        const std::string cfg_text = read_text_file(opt.config);
        json cfg = json::parse(cfg_text, nullptr, false);
        if (cfg.is_discarded()) throw DomainError("invalid json in " + opt.config);

        RunManifest man;
        man.command = app.get_subcommands()[0]->get_name();
        man.config_path = opt.config;
        man.config_digest = hex_digest(fnv1a64(cfg_text));
        man.library_version = kVersion;

        int rc = 0;
        if (man.command == "transform") rc = cmd_transform(opt, cfg, man);
        else if (man.command == "average") rc = cmd_average(opt, cfg, man);
        else if (man.command == "melnikov") rc = cmd_melnikov(opt, cfg, man);
        else if (man.command == "portrait") rc = cmd_portrait(opt, cfg, man);
        else if (man.command == "separatrix") rc = cmd_separatrix(opt, cfg, man);
        else if (man.command == "scattering") rc = cmd_scattering(opt, cfg, man);
        else if (man.command == "simulate") rc = cmd_simulate(opt, cfg, man);
        else throw DomainError("unknown command");

        man.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        write_manifest(man, (fs::path(opt.out_dir) / "manifest.json").string());
        return rc;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
