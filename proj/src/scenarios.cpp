#include "tfd/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <vector>

#include "tfd/algebra_suite.hpp"
#include "tfd/alpha_frame.hpp"
#include "tfd/doublet.hpp"
#include "tfd/errors.hpp"
#include "tfd/green.hpp"
#include "tfd/hamiltonian.hpp"
#include "tfd/interaction.hpp"
#include "tfd/kinetics.hpp"
#include "tfd/propagators.hpp"
#include "tfd/qdynamics.hpp"
#include "tfd/renorm.hpp"
#include "tfd/selfenergy.hpp"
#include "tfd/states.hpp"
#include "tfd/superops.hpp"
#include "tfd/zeta.hpp"

namespace tfd {

namespace {

namespace fs = std::filesystem;

// Floor check: passes exactly when `measured >= floor` (stored residual is
// the shortfall against threshold 0).
void add_floor_check(RunSummary& summary, std::string name, double measured,
                     double floor) {
    summary.add_check(std::move(name), std::max(0.0, floor - measured), 0.0);
}

std::string series_path(const Config& cfg, const std::string& out_dir,
                        std::string& name_out) {
    name_out = cfg.get_string("output.series", "series.csv");
    return (fs::path(out_dir) / name_out).string();
}

std::string summary_path(const Config& cfg, const std::string& out_dir,
                         std::string& name_out) {
    name_out = cfg.get_string("output.summary", "summary.jsonl");
    return (fs::path(out_dir) / name_out).string();
}

RunSummary start_summary(const Config& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    RunSummary summary;
    summary.config_hash = cfg.hash();
    summary.seed = cfg.get_int("run.seed", 0);
    return summary;
}

Statistics parse_statistics(const Config& cfg, const std::string& key,
                            const std::string& fallback) {
    const std::string v = cfg.get_string(key, fallback);
    if (v == "boson") return Statistics::Boson;
    if (v == "fermion") return Statistics::Fermion;
    throw ConfigError("field '" + key + "': unknown statistics '" + v +
                      "' (expected boson or fermion)");
}

std::vector<double> linspace(double a, double b, int points) {
    if (points < 2) throw ConfigError("a time grid needs at least 2 points");
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        out[static_cast<std::size_t>(i)] =
            a + (b - a) * static_cast<double>(i) / (points - 1);
    return out;
}

// Builds the interaction model from `model.*` and the `vertex.*` table.
// Vertex rows are `j k l m re im`; shape errors report the row key.
InteractionModel build_model(const Config& cfg) {
    const Statistics st = parse_statistics(cfg, "model.statistics", "boson");
    const std::vector<double> omega = cfg.get_doubles("model.omega");
    const double lambda = cfg.get_double("model.lambda", 0.0);
    std::vector<VertexEntry> entries;
    const long long count = cfg.get_int("vertex.count", 0);
    for (long long v = 1; v <= count; ++v) {
        const std::string key = "vertex." + std::to_string(v);
        const std::vector<double> row = cfg.get_doubles(key);
        if (row.size() != 6)
            throw ConfigError("field '" + key +
                              "': expected 6 entries (j k l m re im), got " +
                              std::to_string(row.size()));
        VertexEntry e;
        e.j = static_cast<int>(row[0]);
        e.k = static_cast<int>(row[1]);
        e.l = static_cast<int>(row[2]);
        e.m = static_cast<int>(row[3]);
        e.value = cd(row[4], row[5]);
        for (int idx : {e.j, e.k, e.l, e.m})
            if (idx < 0 || idx >= static_cast<int>(omega.size()))
                throw ConfigError("field '" + key + "': mode index " +
                                  std::to_string(idx) + " out of range");
        entries.push_back(e);
    }
    return InteractionModel(st, omega, lambda, entries);
}

void require_size(const std::string& key, const std::vector<double>& v,
                  std::size_t want) {
    if (v.size() != want)
        throw ConfigError("field '" + key + "': expected " +
                          std::to_string(want) + " entries, got " +
                          std::to_string(v.size()));
}

OdeOptions ode_options(const Config& cfg) {
    OdeOptions opt;
    opt.rtol = cfg.get_double("tolerances.ode_rtol", opt.rtol);
    opt.atol = cfg.get_double("tolerances.ode_atol", opt.atol);
    return opt;
}

}  // namespace

RunKind parse_run_kind(const std::string& name) {
    if (name == "verify-algebra") return RunKind::VerifyAlgebra;
    if (name == "evolve") return RunKind::Evolve;
    if (name == "propagators") return RunKind::Propagators;
    if (name == "transport") return RunKind::Transport;
    if (name == "renorm-compare") return RunKind::RenormCompare;
    throw ConfigError("unknown run kind '" + name +
                      "' (expected verify-algebra, evolve, propagators, "
                      "transport, or renorm-compare)");
}

std::string run_kind_name(RunKind kind) {
    switch (kind) {
        case RunKind::VerifyAlgebra: return "verify-algebra";
        case RunKind::Evolve: return "evolve";
        case RunKind::Propagators: return "propagators";
        case RunKind::Transport: return "transport";
        case RunKind::RenormCompare: return "renorm-compare";
    }
    throw Error("unreachable run kind");
}

// ---------------------------------------------------------------------------
// verify-algebra: the identity suite over every configured space.  Bosonic
// spaces are listed by cutoff; a fermionic space and a mixed space can be
// appended.  The series carries one numeric row per identity.
RunSummary run_verify_algebra(const Config& cfg, const std::string& out_dir) {
    RunSummary summary = start_summary(cfg, out_dir);
    const double tol = cfg.get_double("tolerances.interior", 1e-12);

    struct SpaceSpec {
        std::string label;
        FockSpace fock;
    };
    std::vector<SpaceSpec> spaces;
    if (cfg.has("algebra.boson_cutoffs"))
        for (int M : cfg.get_ints("algebra.boson_cutoffs"))
            spaces.push_back({"boson" + std::to_string(M),
                              FockSpace(Statistics::Boson, {M})});
    if (cfg.get_bool("algebra.fermion", true))
        spaces.push_back({"fermion", FockSpace(Statistics::Fermion, {1, 1})});
    if (cfg.get_bool("algebra.boson_pair", false)) {
        const int M = cfg.get_ints("algebra.boson_cutoffs").front();
        spaces.push_back({"boson_pair", FockSpace(Statistics::Boson, {M, M})});
    }
    if (spaces.empty())
        throw ConfigError("verify-algebra: no spaces configured");

    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < spaces.size(); ++s) {
        const LiouvilleSpace L(spaces[s].fock);
        const AlgebraReport report = run_algebra_suite(L, tol);
        for (std::size_t c = 0; c < report.checks.size(); ++c) {
            const AlgebraCheck& chk = report.checks[c];
            summary.add_check(spaces[s].label + "/" + chk.name, chk.residual,
                              chk.threshold);
            rows.push_back({static_cast<double>(s), static_cast<double>(c),
                            chk.residual, chk.threshold});
        }
    }

    std::string series_name, summary_name;
    const std::string spath = series_path(cfg, out_dir, series_name);
    const std::string mpath = summary_path(cfg, out_dir, summary_name);
    emit_series(spath, summary.config_hash,
                {"space", "check", "residual", "threshold"}, rows);
    summary.files = {series_name, summary_name};
    emit_summary(mpath, summary);
    return summary;
}

// ---------------------------------------------------------------------------
// evolve: one driven bosonic mode under the unperturbed generator.
// Verifies geometric-profile preservation (or, for a perturbed start, the
// closed-form q-norm law), trace conservation, and the vanishing drift of
// the frame-invariant combinations; with a nonzero diagnostic gamma the
// run instead demonstrates that trace and invariants break.
RunSummary run_evolve(const Config& cfg, const std::string& out_dir) {
    RunSummary summary = start_summary(cfg, out_dir);
    if (parse_statistics(cfg, "model.statistics", "boson") !=
        Statistics::Boson)
        throw ConfigError("evolve: the geometric-profile scenario requires "
                          "bosonic statistics");

    const int cutoff = static_cast<int>(cfg.get_int("evolve.cutoff"));
    if (cutoff < 4) throw ConfigError("evolve.cutoff must be at least 4");
    const double omega = cfg.get_double("evolve.omega", 1.0);
    const double n_inf = cfg.get_double("evolve.n_inf");
    const double n0 = cfg.get_double("evolve.n0");
    const double rate = cfg.get_double("evolve.rate", 1.0);
    const double gamma = cfg.get_double("evolve.gamma", 0.0);
    const double t_end = cfg.get_double("evolve.t_end", 5.0);
    const int points = static_cast<int>(cfg.get_int("evolve.points", 51));
    const double perturb = cfg.get_double("evolve.perturb", 0.0);
    const std::string form_name = cfg.get_string("evolve.form", "physical");
    HuForm form;
    if (form_name == "physical") form = HuForm::Physical;
    else if (form_name == "general") form = HuForm::General;
    else
        throw ConfigError("field 'evolve.form': unknown form '" + form_name +
                          "' (expected physical or general)");
    const double tol_geo = cfg.get_double("tolerances.geometric", 1e-8);
    const double tol_q = cfg.get_double("tolerances.qnorm", 1e-8);
    const double tol_trace = cfg.get_double("tolerances.trace", 1e-10);
    const double tol_inv = cfg.get_double("tolerances.invariant", 1e-8);
    const double floor = cfg.get_double("tolerances.violation_floor", 1e-3);

    const LiouvilleSpace L(FockSpace(Statistics::Boson, {cutoff}));
    const Schedule occupation = Schedule::exp_approach(n_inf, n0, rate);
    const ThermalSchedule sched = {{Schedule::constant(omega), occupation,
                                    Schedule::constant(gamma)}};

    VecC rho0 = geometric_superstate(L, {n0});
    if (perturb != 0.0) {
        const double f0 = n0 / (1.0 + n0);
        const double p3 = (1.0 - f0) * f0 * f0 * f0;
        if (perturb < 0.0 || perturb > 0.5 * p3)
            throw ConfigError(
                "evolve.perturb must lie in [0, p_3/2] to keep the "
                "distribution positive");
        rho0[L.pair_index(2, 2)] += perturb;
        rho0[L.pair_index(3, 3)] -= perturb;
    }

    const std::vector<double> grid = linspace(0.0, t_end, points);
    const UnperturbedGenerator gen(L);
    const OdeOptions opt = ode_options(cfg);
    const std::vector<VecC> traj =
        evolve_lvn(gen, sched, form, rho0, grid, opt);

    const VecC bra = identity_superstate(L);
    const Eigen::VectorXd p0 = diagonal_distribution(L, rho0);
    const Eigen::VectorXd q0 = q_vector(p0, n0);

    std::vector<std::vector<double>> rows;
    double max_geo = 0.0, max_trace = 0.0, max_qdev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double nt = occupation.value(t);
        const double f = nt / (1.0 + nt);
        const Eigen::VectorXd p = diagonal_distribution(L, traj[i]);
        double geo = 0.0;
        double weight = 1.0 - f;
        for (int m = 0; m <= cutoff; ++m) {
            geo = std::max(geo, std::abs(p[m] - weight));
            weight *= f;
        }
        const double trace_res = std::abs(bra.dot(traj[i]).real() - 1.0);
        const double qnorm = q_vector(p, nt).norm();
        const double qlaw =
            i == 0 ? q0.norm() : evolve_q(q0, occupation, 0.0, t, opt).norm_closed;
        max_geo = std::max(max_geo, geo);
        max_trace = std::max(max_trace, trace_res);
        max_qdev = std::max(max_qdev, std::abs(qnorm - qlaw));
        rows.push_back({t, nt, geo, trace_res, qnorm, qlaw});
    }

    // Frame-invariant drift and identity-bra drift probed at interior
    // sample times of the same schedule (both are operator statements, so
    // the probes ride the schedule rather than the state).  The bra drift
    // is the bulk observable that singles out gamma = 0: it vanishes for
    // every schedule exactly when the diagnostic rate is off, while the
    // trace of the evolved state only picks up boundary-suppressed terms.
    double max_drift = 0.0, max_bra = 0.0;
    const double h = std::min(0.01, t_end / 100.0);
    for (double frac : {0.25, 0.5, 0.75}) {
        const double ts = frac * t_end;
        const FrameDriftReport drift =
            frame_invariant_drift(L, 0, sched[0], 0.0, ts, h, opt);
        max_drift = std::max({max_drift, drift.primitive_pair1,
                              drift.primitive_pair2, drift.weighted_pair1,
                              drift.weighted_pair2});
        const ZetaParams z = solve_zeta(Statistics::Boson, sched[0], ts);
        const AlphaCoefficients ac =
            evolve_alpha(Statistics::Boson, sched[0], 0.0, ts, opt);
        for (double d : identity_bra_drift(L, 0, z, ac))
            max_bra = std::max(max_bra, d);
    }

    if (gamma == 0.0) {
        summary.add_check("trace_preserved", max_trace, tol_trace);
        summary.add_check("invariant_drift", max_drift, tol_inv);
        summary.add_check("identity_bra_drift", max_bra, tol_inv);
        if (perturb == 0.0) {
            summary.add_check("geometric_profile", max_geo, tol_geo);
        } else {
            add_floor_check(summary, "initial_nongeometric_floor",
                            rows.front()[2], 0.5 * perturb);
            summary.add_check("qnorm_law", max_qdev, tol_q);
        }
    } else {
        add_floor_check(summary, "invariant_violation_floor", max_drift,
                        floor);
        add_floor_check(summary, "bra_drift_violation_floor", max_bra, floor);
    }

    std::string series_name, summary_name;
    const std::string spath = series_path(cfg, out_dir, series_name);
    const std::string mpath = summary_path(cfg, out_dir, summary_name);
    emit_series(spath, summary.config_hash,
                {"time", "n_target", "geometric_residual", "trace_residual",
                 "qnorm", "qnorm_law"},
                rows);
    summary.files = {series_name, summary_name};
    emit_summary(mpath, summary);
    return summary;
}

// ---------------------------------------------------------------------------
// propagators: closed-form two-time kernels on a uniform grid.  Verifies
// the diagonal structure of the dressed kernel, thermal causality of the
// bare kernel (bit-identity under a late-time schedule perturbation), and
// optionally the equivalence with the truncated-space engine.
RunSummary run_propagators(const Config& cfg, const std::string& out_dir) {
    RunSummary summary = start_summary(cfg, out_dir);
    const Statistics st = parse_statistics(cfg, "model.statistics", "boson");
    const double omega = cfg.get_double("prop.omega", 1.0);
    const double n = cfg.get_double("prop.n");
    const double t_min = cfg.get_double("prop.t_min", 0.0);
    const double t_max = cfg.get_double("prop.t_max", 1.0);
    const int points = static_cast<int>(cfg.get_int("prop.points", 20));
    const int engine_cutoff =
        static_cast<int>(cfg.get_int("prop.engine_cutoff", 0));
    const double tol_struct = cfg.get_double("tolerances.structure", 1e-12);
    const double tol_equiv = cfg.get_double("tolerances.equivalence", 1e-6);
    if (!(t_max > t_min)) throw ConfigError("prop.t_max must exceed prop.t_min");

    const std::vector<double> times = linspace(t_min, t_max, points);
    const Schedule omega_sched = Schedule::constant(omega);

    // Piecewise-cubic occupation profiles that agree bitwise on the early
    // knot segment and differ after t_mid: thermal causality demands that
    // every block whose earlier argument is at most t_mid stays
    // bit-identical under the late-time change.
    const double t_mid = 0.5 * (t_min + t_max);
    const Schedule occ_base = Schedule::cubic_hermite(
        {t_min, t_mid, t_max}, {n, n, n}, {0.0, 0.0, 0.0});
    const Schedule occ_poisoned = Schedule::cubic_hermite(
        {t_min, t_mid, t_max}, {n, n, n + 1.0e6}, {0.0, 0.0, 0.0});

    const ModeSchedule base{omega_sched, occ_base, Schedule::constant(0.0)};
    const ModeSchedule poisoned{omega_sched, occ_poisoned,
                                Schedule::constant(0.0)};

    const TwoTimeKernel dker = tabulate_d(omega_sched, times);
    const TwoTimeKernel delta = tabulate_delta(st, base, times);
    const TwoTimeKernel delta_poisoned = tabulate_delta(st, poisoned, times);

    summary.add_check("dressed_structure", kernel_structure_defect(dker),
                      tol_struct);

    std::size_t causal_bytes = 0;
    bool poison_bites = false;
    for (std::size_t i1 = 0; i1 < times.size(); ++i1)
        for (std::size_t i2 = 0; i2 < times.size(); ++i2) {
            const bool early = std::min(times[i1], times[i2]) <= t_mid;
            const bool same =
                std::memcmp(delta.block(i1, i2).data(),
                            delta_poisoned.block(i1, i2).data(),
                            4 * sizeof(cd)) == 0;
            if (early && !same) causal_bytes += 1;
            if (!early && !same) poison_bites = true;
        }
    summary.add_check("thermal_causality_bitwise",
                      static_cast<double>(causal_bytes), 0.0);
    add_floor_check(summary, "poison_bites_floor", poison_bites ? 1.0 : 0.0,
                    1.0);

    if (engine_cutoff > 0) {
        const LiouvilleSpace L(FockSpace(st, {engine_cutoff}));
        const InteractionModel free_model(st, {omega}, 0.0, {});
        const ThermalSchedule sched = {base};
        const GreenFunctionSet gs =
            full_green(L, free_model, sched, 0, 0, times, ode_options(cfg));
        double diff = 0.0;
        for (std::size_t i1 = 0; i1 < times.size(); ++i1)
            for (std::size_t i2 = 0; i2 < times.size(); ++i2) {
                Eigen::Matrix2cd engine;
                if (i1 == i2) {
                    // The engine stores one-sided equal-time limits; the
                    // tabulated kernel mixes them (11 from below, 22 from
                    // above), so rebuild the mixed dressed block and push
                    // it through the same Bogoliubov sandwich.
                    Eigen::Matrix2cd gm = gs.g.block(i1, i1);
                    gm(1, 0) = gs.g_above[i1](1, 0);
                    gm(1, 1) = gs.g_above[i1](1, 1);
                    const double nt = gs.n_schedule_j[i1];
                    engine = bogoliubov_inverse(st, nt).cast<cd>() * gm *
                             bogoliubov(st, nt).cast<cd>();
                } else {
                    engine = gs.G.block(i1, i2);
                }
                diff = std::max(
                    diff, (engine - delta.block(i1, i2))
                              .cwiseAbs()
                              .maxCoeff());
            }
        summary.add_check("sandwich_engine_equivalence", diff, tol_equiv);
    }

    std::vector<std::vector<double>> rows;
    for (std::size_t i1 = 0; i1 < times.size(); ++i1)
        for (std::size_t i2 = 0; i2 < times.size(); ++i2) {
            const Eigen::Matrix2cd& b = delta.block(i1, i2);
            rows.push_back({times[i1], times[i2], b(0, 0).real(),
                            b(0, 0).imag(), b(0, 1).real(), b(0, 1).imag(),
                            b(1, 0).real(), b(1, 0).imag(), b(1, 1).real(),
                            b(1, 1).imag()});
        }

    std::string series_name, summary_name;
    const std::string spath = series_path(cfg, out_dir, series_name);
    const std::string mpath = summary_path(cfg, out_dir, summary_name);
    emit_series(spath, summary.config_hash,
                {"t1", "t2", "re_11", "im_11", "re_12", "im_12", "re_21",
                 "im_21", "re_22", "im_22"},
                rows);
    summary.files = {series_name, summary_name};
    emit_summary(mpath, summary);
    return summary;
}

// ---------------------------------------------------------------------------
// transport: occupation kinetics under either collision closure.  The
// series reports occupations, instantaneous collision rates, and the gap
// to the equilibrium profile fixed by the initial number and energy.
RunSummary run_transport(const Config& cfg, const std::string& out_dir) {
    RunSummary summary = start_summary(cfg, out_dir);
    const InteractionModel model = build_model(cfg);
    const std::vector<double>& omega = model.omega0();
    const std::size_t K = omega.size();

    std::vector<double> n0 = cfg.get_doubles("transport.n0");
    require_size("transport.n0", n0, K);
    const double t_end = cfg.get_double("transport.t_end", 8.0);
    const std::string mode_name =
        cfg.get_string("transport.mode", "markovian");
    KineticOptions opt;
    if (mode_name == "markovian") opt.mode = KineticMode::Markovian;
    else if (mode_name == "memory") opt.mode = KineticMode::Memory;
    else
        throw ConfigError("field 'transport.mode': unknown mode '" +
                          mode_name + "' (expected markovian or memory)");
    opt.step = cfg.get_double("transport.step", 0.02);
    opt.gamma_markov = cfg.get_double("transport.gamma", 0.05);
    opt.gamma_delta = cfg.get_double("transport.gamma_delta", 0.0);
    const long long stride = cfg.get_int("transport.stride", 1);
    if (stride < 1) throw ConfigError("transport.stride must be positive");
    const double tol_cons = cfg.get_double("tolerances.conservation", 1e-10);
    const double tol_asym = cfg.get_double("tolerances.asymptote", 1e-4);
    const bool check_energy = cfg.get_bool("transport.check_energy", true);
    const bool check_asym = cfg.get_bool(
        "transport.check_asymptote", opt.mode == KineticMode::Markovian);

    const KineticHistory traj = relax(model, omega, n0, 0.0, t_end, opt);

    const double number0 = total_number(n0);
    const double energy0 = total_energy(omega, n0);
    const BoseEinsteinFit fit = bose_einstein_fit(omega, number0, energy0);
    const std::vector<double> n_eq =
        bose_einstein_occupations(omega, fit.beta, fit.mu);

    std::vector<std::vector<double>> rows;
    double max_dn = 0.0, max_de = 0.0, min_occ = 0.0;
    KineticHistory prefix;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        const std::vector<double>& ni = traj.occupations[i];
        prefix.times.push_back(t);
        prefix.occupations.push_back(ni);
        max_dn = std::max(max_dn, std::abs(total_number(ni) - number0));
        max_de = std::max(max_de, std::abs(total_energy(omega, ni) - energy0));
        min_occ =
            std::min(min_occ, *std::min_element(ni.begin(), ni.end()));
        const bool emit_row = (i % static_cast<std::size_t>(stride) == 0) ||
                              i + 1 == traj.times.size();
        if (!emit_row) continue;
        const std::vector<double> rate =
            opt.mode == KineticMode::Markovian
                ? markovian_collision(model, omega, ni, opt.gamma_markov)
                : transport_rhs(model, omega, prefix, t, opt.gamma_delta);
        double gap = 0.0;
        for (std::size_t j = 0; j < K; ++j)
            gap = std::max(gap, std::abs(ni[j] - n_eq[j]));
        std::vector<double> row;
        row.push_back(t);
        for (double nj : ni) row.push_back(nj);
        for (double rj : rate) row.push_back(rj);
        row.push_back(gap);
        rows.push_back(std::move(row));
    }

    summary.add_check("number_conservation", max_dn, tol_cons);
    if (check_energy) summary.add_check("energy_conservation", max_de, tol_cons);
    summary.add_check("positivity", std::max(0.0, -min_occ), 0.0);
    if (check_asym) {
        double asym = 0.0;
        const std::vector<double>& nf = traj.occupations.back();
        for (std::size_t j = 0; j < K; ++j)
            asym = std::max(asym, std::abs(nf[j] - n_eq[j]));
        summary.add_check("equilibrium_asymptote", asym, tol_asym);
    }

    std::vector<std::string> columns;
    columns.push_back("t");
    for (std::size_t j = 1; j <= K; ++j)
        columns.push_back("n_" + std::to_string(j));
    for (std::size_t j = 1; j <= K; ++j)
        columns.push_back("ndot_" + std::to_string(j));
    columns.push_back("equilibrium_gap");

    std::string series_name, summary_name;
    const std::string spath = series_path(cfg, out_dir, series_name);
    const std::string mpath = summary_path(cfg, out_dir, summary_name);
    emit_series(spath, summary.config_hash, columns, rows);
    summary.files = {series_name, summary_name};
    emit_summary(mpath, summary);
    return summary;
}

// ---------------------------------------------------------------------------
// renorm-compare: one staggered on-shell step per listed mode against a
// static occupation background, compared with the transport closure on the
// same quadrature nodes and with the equilibrium mixed-component condition.
RunSummary run_renorm_compare(const Config& cfg, const std::string& out_dir) {
    RunSummary summary = start_summary(cfg, out_dir);
    const InteractionModel model = build_model(cfg);
    const std::vector<double>& omega0 = model.omega0();
    const std::size_t K = omega0.size();

    std::vector<double> n = cfg.get_doubles("renorm.n");
    require_size("renorm.n", n, K);
    const double t = cfg.get_double("renorm.t", 2.0);
    const double t_mem = cfg.get_double("renorm.t_mem", t);
    if (!(t_mem > 0.0) || t_mem > t + 1e-12)
        throw ConfigError("renorm.t_mem must lie in (0, renorm.t]");
    RenormOptions ropt;
    ropt.quad_step = cfg.get_double("renorm.quad_step", 0.01);
    ropt.bracket_half = cfg.get_double("renorm.bracket", 0.0);
    const double gamma_s = cfg.get_double("renorm.gamma_s", 0.3);
    std::vector<int> modes;
    if (cfg.has("renorm.modes")) modes = cfg.get_ints("renorm.modes");
    else
        for (std::size_t j = 0; j < K; ++j)
            modes.push_back(static_cast<int>(j));
    const double tol_onshell = cfg.get_double("tolerances.onshell", 1e-10);
    const double tol_stagger = cfg.get_double("tolerances.stagger", 1e-10);
    const double tol_s12 = cfg.get_double("tolerances.s12", 1e-10);
    const double tol_rate = cfg.get_double("tolerances.rate_match", 1e-8);

    ThermalSchedule sched;
    for (std::size_t j = 0; j < K; ++j)
        sched.push_back({Schedule::constant(omega0[j]),
                         Schedule::constant(n[j]), Schedule::constant(0.0)});

    // Transport rate on the same uniform nodes the staggered step uses.
    const int count =
        static_cast<int>(std::ceil(t_mem / ropt.quad_step - 1e-12));
    KineticHistory frozen;
    for (int i = 0; i <= count; ++i) {
        frozen.times.push_back(t - t_mem +
                               t_mem * static_cast<double>(i) / count);
        frozen.occupations.push_back(n);
    }
    const std::vector<double> rhs =
        transport_rhs(model, omega0, frozen, frozen.times.back());

    std::vector<std::vector<double>> rows;
    double max_onshell = 0.0, max_stagger = 0.0, max_s12 = 0.0;
    double max_rate_gap = 0.0, fallbacks = 0.0;
    for (int j : modes) {
        if (j < 0 || j >= static_cast<int>(K))
            throw ConfigError("renorm.modes: mode index out of range");
        const OnShellResult r =
            new_renorm_step(model, sched, j, t, t_mem, omega0[static_cast<std::size_t>(j)], ropt);
        const double s12_mag =
            std::abs(equilibrium_s12(model, n, j, r.omega, gamma_s));
        const double rate_gap =
            std::abs(r.ndot - rhs[static_cast<std::size_t>(j)]);
        max_onshell = std::max(max_onshell, r.re_s11_residual);
        max_stagger = std::max(max_stagger, r.stagger_residual);
        max_s12 = std::max(max_s12, s12_mag);
        max_rate_gap = std::max(max_rate_gap, rate_gap);
        if (r.omega_fallback) fallbacks += 1.0;
        rows.push_back({static_cast<double>(j),
                        omega0[static_cast<std::size_t>(j)], r.omega, r.ndot,
                        r.re_s11_residual, r.stagger_residual, s12_mag,
                        rate_gap});
    }

    summary.add_check("onshell_residual", max_onshell, tol_onshell);
    summary.add_check("stagger_residual", max_stagger, tol_stagger);
    summary.add_check("equilibrium_mixed_component", max_s12, tol_s12);
    summary.add_check("rate_matches_transport", max_rate_gap, tol_rate);
    summary.add_check("root_solve_fallbacks", fallbacks, 0.0);

    std::string series_name, summary_name;
    const std::string spath = series_path(cfg, out_dir, series_name);
    const std::string mpath = summary_path(cfg, out_dir, summary_name);
    emit_series(spath, summary.config_hash,
                {"mode", "omega0", "omega", "ndot", "onshell_residual",
                 "stagger_residual", "s12_mag", "rate_gap"},
                rows);
    summary.files = {series_name, summary_name};
    emit_summary(mpath, summary);
    return summary;
}

RunSummary run_scenario(const Config& cfg, const std::string& out_dir) {
    switch (parse_run_kind(cfg.get_string("run.kind"))) {
        case RunKind::VerifyAlgebra: return run_verify_algebra(cfg, out_dir);
        case RunKind::Evolve: return run_evolve(cfg, out_dir);
        case RunKind::Propagators: return run_propagators(cfg, out_dir);
        case RunKind::Transport: return run_transport(cfg, out_dir);
        case RunKind::RenormCompare: return run_renorm_compare(cfg, out_dir);
    }
    throw Error("unreachable run kind");
}

}  // namespace tfd
