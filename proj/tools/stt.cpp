// stt: command-line driver for the Stokes-transport solver and its checks.
//
//   stt <stokes|transport|simulate|picard|stability|norms|ledger>
//       [--config PATH] [--out DIR] [--seed N] [--poiseuille PHI]
//
// Exit codes: 0 ok, 1 solver failure, 2 configuration error.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "stt/config.hpp"
#include "stt/coupling.hpp"
#include "stt/norms.hpp"
#include "stt/output.hpp"
#include "stt/snapshot.hpp"

namespace fs = std::filesystem;
using namespace stt;

namespace {

struct Options {
    std::string config;
    std::string out = "stt_out";
    std::uint64_t seed = 1;
    std::optional<double> poiseuille;
};

void write_velocity(const fs::path& dir, const std::string& stem, const VelocityField& u) {
    save_snapshot(dir / (stem + "_u1.stf"), u.u1);
    save_snapshot(dir / (stem + "_u2.stf"), u.u2);
}

std::string flux_csv(const VelocityField& u) {
    std::ostringstream os;
    os << "column,flux\n";
    const auto prof = flux_profile(u);
    for (std::size_t i = 0; i < prof.size(); ++i) os << i << ',' << format_double(prof[i]) << "\n";
    return os.str();
}

int run_stokes(const Config& cfg, const Options& o, const fs::path& out) {
    const GridSpec g = cfg.grid();
    StokesSolution s;
    std::optional<ScalarField> rho;
    if (o.poiseuille) {
        if (!g.domain.periodic()) throw ConfigError("--poiseuille needs run.domain = strip");
        s = poiseuille(*o.poiseuille, g);
    } else {
        rho = make_density(g, cfg.scenario());
        s = solve_buoyancy(*rho, cfg.stokes());
    }
    fs::create_directories(out);
    if (rho) save_snapshot(out / "rho.stf", *rho);
    write_velocity(out, "stokes", s.u);
    save_snapshot(out / "stokes_p.stf", s.p);
    write_text_file(out / "flux.csv", flux_csv(s.u));
    std::ostringstream stats;
    stats << s.stats.to_text() << "flux = " << format_double(s.flux) << "\npressure_slope = "
          << format_double(s.pressure_slope) << "\nresidual_norm = " << format_double(s.residual_norm) << "\n";
    write_text_file(out / "stokes.txt", stats.str());
    std::cout << stats.str();
    return 0;
}

int run_transport(const Config& cfg, const Options& o, const fs::path& out) {
    const GridSpec g = cfg.grid();
    const ScalarField rho = make_density(g, cfg.scenario());
    TransportConfig tc;
    tc.dt = cfg.number("transport.dt");
    if (!(tc.dt > 0.0)) throw ConfigError("transport.dt must be positive");
    const double T = cfg.number("transport.T");
    const std::string& kind = cfg.text("transport.velocity");
    VelocityField u;
    if (kind == "stokes")
        u = solve_buoyancy(rho, cfg.stokes()).u;
    else if (kind == "poiseuille") {
        if (!g.domain.periodic()) throw ConfigError("transport.velocity = poiseuille needs the strip");
        u = poiseuille(cfg.number("transport.phi"), g).u;
    } else
        throw ConfigError("transport.velocity must be 'stokes' or 'poiseuille'");
    (void)o;
    const SteadyVelocity prov(u);
    const FlowMap X = integrate_flow(prov, g, 0.0, T, tc);
    const FlowMap back = integrate_flow(prov, g, T, 0.0, tc);
    const ScalarField rhoT = compose(rho, back);
    const LipschitzReport lip = lipschitz_growth(X, u);
    fs::create_directories(out);
    save_snapshot(out / "rho0.stf", rho);
    save_snapshot(out / "rho_T.stf", rhoT);
    {
        std::ofstream os(out / "flowmap.stf", std::ios::binary);
        write_flow_map(os, X);
    }
    std::ostringstream rep;
    rep << "T = " << format_double(T) << "\nrho0_min = " << format_double(rho.min())
        << "\nrho0_max = " << format_double(rho.max()) << "\nrhoT_min = " << format_double(rhoT.min())
        << "\nrhoT_max = " << format_double(rhoT.max()) << "\nrho0_l2 = " << format_double(lq_norm(rho, 2.0))
        << "\nrhoT_l2 = " << format_double(lq_norm(rhoT, 2.0)) << "\nmeasured_lip = " << format_double(lip.measured_lip)
        << "\nlip_bound = " << format_double(lip.bound) << "\nlip_violation = " << (lip.violation ? "true" : "false")
        << "\n";
    write_text_file(out / "transport.txt", rep.str());
    std::cout << rep.str();
    return 0;
}

int run_simulate(const Config& cfg, const Options&, const fs::path& out) {
    const GridSpec g = cfg.grid();
    const ScalarField rho = make_density(g, cfg.scenario());
    MarchOptions mo;
    mo.stokes = cfg.stokes();
    mo.substeps = cfg.integer("simulate.substeps");
    const int every = cfg.integer("simulate.snapshot_every");
    const double T = cfg.number("simulate.T"), dt = cfg.number("simulate.dt");
    if (!(T >= 0.0) || !(dt > 0.0) || mo.substeps < 1 || every < 0)
        throw ConfigError("invalid [simulate] parameters");
    fs::create_directories(out);
    int step = 0;
    mo.observer = [&](const SimulationState& s, const SeriesRow&) {
        if (every > 0 && step % every == 0) {
            char name[32];
            std::snprintf(name, sizeof name, "rho_%06d.stf", step);
            save_snapshot(out / name, s.rho);
        }
        ++step;
    };
    const MarchResult r = time_march(rho, T, dt, mo);
    {
        std::ofstream os(out / "series.csv");
        emit_series(os, r.series);
    }
    save_snapshot(out / "rho_final.stf", r.final_state.rho);
    const SeriesRow& last = r.series.back();
    std::cout << "steps = " << r.series.size() - 1 << "\nt = " << format_double(last.t)
              << "\nrho_linf = " << format_double(last.rho_linf) << "\nu_linf = " << format_double(last.u_linf)
              << "\npotential_energy = " << format_double(last.potential_energy)
              << "\npotential_energy_monotone = " << (r.energy_monotone ? "true" : "false") << "\n";
    return 0;
}

int run_picard(const Config& cfg, const Options&, const fs::path& out) {
    const GridSpec g = cfg.grid();
    const ScalarField rho = make_density(g, cfg.scenario());
    PicardOptions po;
    po.stokes = cfg.stokes();
    po.n_time_nodes = cfg.integer("picard.n_time_nodes");
    po.tol = cfg.number("picard.tol");
    po.max_picard = cfg.integer("picard.max_picard");
    po.substeps = cfg.integer("picard.substeps");
    po.keep_iterates = false;
    if (po.n_time_nodes < 2 || !(po.tol > 0.0) || po.max_picard < 1 || po.substeps < 1)
        throw ConfigError("invalid [picard] parameters");
    double T = cfg.number("picard.T");
    if (T < 0.0) throw ConfigError("picard.T must be >= 0 (0 selects the window automatically)");
    if (T == 0.0) {
        const VelocityField u0 = solve_buoyancy(rho, po.stokes).u;
        const double B = w1inf_norm(u0);
        T = choose_window(B, lq_norm(u0, INFINITY), g.domain.periodic(), cfg.number("picard.target"));
        if (!std::isfinite(T)) T = 1.0;
    }
    const PicardResult r = picard_solve(rho, T, po);
    fs::create_directories(out);
    {
        std::ofstream os(out / "picard.csv");
        emit_picard(os, r.trace);
    }
    {
        std::ofstream os(out / "series.csv");
        emit_series(os, r.series);
    }
    std::cout << "T = " << format_double(T) << "\niterations = " << r.trace.iterations
              << "\nconverged = " << (r.trace.converged ? "true" : "false") << "\nB = " << format_double(r.trace.B)
              << "\ncontraction_estimate = " << format_double(r.trace.contraction_estimate)
              << "\ndelta_last = " << format_double(r.trace.diffs.back()) << "\n";
    return 0;
}

// Smooth random perturbation: a few Fourier modes times sin(pi z).
ScalarField random_perturbation(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    double a[3][2];
    for (auto& m : a)
        for (double& c : m) c = nd(rng);
    const double L = g.domain.x_extent, pi = std::acos(-1.0);
    return sample(g, Staggering::Center, [&](double x, double z) {
        double v = 0.0;
        for (int m = 0; m < 3; ++m)
            v += a[m][0] * std::cos(2 * pi * (m + 1) * x / L) + a[m][1] * std::sin(2 * pi * (m + 1) * x / L);
        return v * std::sin(pi * z);
    });
}

int run_stability(const Config& cfg, const Options& o, const fs::path& out) {
    const GridSpec g = cfg.grid();
    const ScalarField rho = make_density(g, cfg.scenario());
    StabilityOptions so;
    so.T = cfg.number("stability.T");
    so.dt = cfg.number("stability.dt");
    so.march.stokes = cfg.stokes();
    const double eps = cfg.number("stability.eps");
    const int pairs = cfg.integer("stability.pairs");
    if (!(so.T > 0.0) || !(so.dt > 0.0) || pairs < 1) throw ConfigError("invalid [stability] parameters");
    std::mt19937_64 rng(o.seed);
    std::ostringstream csv;
    csv << "pair,t,G\n";
    bool all = true;
    double worst = 0.0;
    for (int p = 0; p < pairs; ++p) {
        const ScalarField pert = random_perturbation(g, rng);
        const StabilityReport r = stability_experiment(rho, rho + eps * pert, so);
        for (std::size_t i = 0; i < r.t.size(); ++i)
            csv << p << ',' << format_double(r.t[i]) << ',' << format_double(r.G[i]) << "\n";
        all = all && r.affine_envelope;
        worst = std::max(worst, r.envelope_C);
    }
    fs::create_directories(out);
    write_text_file(out / "stability.csv", csv.str());
    std::cout << "pairs = " << pairs << "\nworst_envelope_C = " << format_double(worst)
              << "\naffine_envelope = " << (all ? "true" : "false") << "\n";
    return 0;
}

int run_norms(const Config& cfg, const Options&, const fs::path& out) {
    const GridSpec g = cfg.grid();
    const ScalarField rho = make_density(g, cfg.scenario());
    std::vector<NormReport> reps;
    reps.push_back({"l1", lq_norm(rho, 1.0), {}});
    reps.push_back({"l2", lq_norm(rho, 2.0), {}});
    reps.push_back({"linf", lq_norm(rho, INFINITY), {}});
    reps.push_back({"h1", h1_norm(rho), {}});
    reps.push_back({"hneg1", hneg1_norm(rho), {}});
    if (g.domain.periodic() && cfg.integer("norms.windows") != 0) {
        const Partition P(g.domain);
        for (int m : {-1, 0, 1}) reps.push_back(uloc_norm(rho, m, P));
    }
    std::ostringstream csv;
    for (const auto& r : reps) csv << r.to_csv() << "\n";
    fs::create_directories(out);
    write_text_file(out / "norms.csv", csv.str());
    std::cout << csv.str();
    return 0;
}

int run_ledger(const Config& cfg, const Options& o, const fs::path& out) {
    const int nmax = cfg.integer("ledger.nmax"), fam = cfg.integer("ledger.families");
    const double C = cfg.number("ledger.C"), F = cfg.number("ledger.F");
    if (nmax < 1 || fam < 1 || !(C > 0.0) || !(F > 0.0)) throw ConfigError("invalid [ledger] parameters");
    std::mt19937_64 rng(o.seed);
    int passed = 0;
    std::ostringstream csv;
    csv << "family,C0,k0,worst_failing_index,worst_bound,pass\n";
    for (int f = 0; f < fam; ++f) {
        const LedgerVerdict v = energy_ledger_check(generate_ledger(nmax, C, F, rng));
        passed += v.pass ? 1 : 0;
        csv << f << ',' << format_double(v.C0) << ',' << v.k0 << ',' << v.worst_failing_index << ','
            << format_double(v.worst_bound) << ',' << (v.pass ? 1 : 0) << "\n";
    }
    fs::create_directories(out);
    write_text_file(out / "ledger.csv", csv.str());
    std::cout << "families = " << fam << "\npassed = " << passed << "\n";
    return passed == fam ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* t = std::getenv("ST_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"Stokes-transport solver and verification harness"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config, "run manifest (key = value with [sections])");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--seed", o.seed, "seed for random suites");
    std::map<std::string, int (*)(const Config&, const Options&, const fs::path&)> cmds{
        {"stokes", run_stokes},   {"transport", run_transport}, {"simulate", run_simulate},
        {"picard", run_picard},   {"stability", run_stability}, {"norms", run_norms},
        {"ledger", run_ledger},
    };
    for (auto& [name, fn] : cmds) {
        auto* sc = app.add_subcommand(name);
        sc->fallthrough();
        if (name == "stokes") sc->add_option("--poiseuille", o.poiseuille, "emit the Poiseuille solution of flux PHI");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();

    Config cfg;
    try {
        if (!o.config.empty()) cfg = Config::load(o.config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    const fs::path out(o.out);
    try {
        // validate the typed sections before anything is written
        (void)cfg.grid();
        (void)cfg.scenario();
        (void)cfg.stokes();
        const int rc = cmds.at(name)(cfg, o, out);
        write_text_file(out / "config.resolved.ini", cfg.resolved_text());
        return rc;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << name << " failed: " << e.what() << "\n";
        return 1;
    }
}
