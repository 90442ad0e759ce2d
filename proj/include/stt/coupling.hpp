#pragma once

// The coupled system: buoyancy-driven Stokes flow transporting the density.
//
//   -Lap u + grad p = -rho e_z,  div u = 0,  u = 0 on the walls
//   d_t rho + u . grad rho = 0
//
// picard_solve iterates on a short window [0, T]; time_march is the
// practical one-solve-per-step scheme.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "stt/stokes.hpp"
#include "stt/transport.hpp"

namespace stt {

class CouplingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SimulationState {
    double t = 0.0;
    ScalarField rho;
    VelocityField u;
    ScalarField p;
    double pressure_slope = 0.0;
};

/// One row of series.csv plus the range used for the max-principle checks.
struct SeriesRow {
    double t = 0.0;
    double rho_l2 = 0.0;
    double rho_linf = 0.0;
    double u_linf = 0.0;
    double u_h1 = 0.0;
    double flux = 0.0;
    double potential_energy = 0.0;  // int rho z
    double rho_min = 0.0;
    double rho_max = 0.0;
    double max_div = 0.0;
};

SeriesRow measure(double t, const ScalarField& rho, const StokesSolution& s);

/// |u|_inf + gradient_sup(u)
double w1inf_norm(const VelocityField& u);

/// ---- Picard iteration ----

struct PicardOptions {
    int n_time_nodes = 16;
    double tol = 1e-8;
    int max_picard = 10;
    int substeps = 2;  // RK4 steps per node interval
    bool keep_iterates = true;
    StokesConfig stokes;
};

struct PicardIterate {
    std::vector<ScalarField> rho;  // one per time node
    std::vector<VelocityField> u;
};

struct PicardTrace {
    std::vector<PicardIterate> iterates;  // rho^N, u^N for N = 0, 1, ...
    std::vector<double> diffs;            // delta_N = max_t |rho^{N+1} - rho^N|
    std::vector<double> ratios;           // delta_{N+1} / delta_N
    std::string diff_norm;                // "hneg1" or "hneg1_uloc"
    double B = 0.0;                       // measured W^{1,inf} / |rho|_inf ratio times |rho0|_inf
    double M = 0.0;                       // max |u|_inf
    double T = 0.0;
    double contraction_estimate = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct PicardResult {
    std::vector<SimulationState> states;  // converged iterate at every node
    std::vector<SeriesRow> series;
    PicardTrace trace;
};

/// B T e^{BT}, times (1 + M T)^{1/2} on the strip where the difference is
/// measured in the uniformly local norm and windows spread at speed M.
double contraction_estimate(double B, double M, double T, bool strip);

/// Largest T with contraction_estimate(B, M, T, strip) <= target.
double choose_window(double B, double M, bool strip, double target = 0.5);

PicardResult picard_solve(const ScalarField& rho0, double T, const PicardOptions& opt = {});

/// ---- time marching ----

struct MarchOptions {
    StokesConfig stokes;
    int substeps = 1;  // RK4 steps per time step
    std::function<void(const SimulationState&, const SeriesRow&)> observer;
};

struct MarchResult {
    std::vector<SeriesRow> series;  // steps + 1 rows
    SimulationState final_state;
    bool energy_monotone = true;    // diagnostic only
};

MarchResult time_march(const ScalarField& rho0, double T, double dt, const MarchOptions& opt = {});

/// H^-1 on the rectangle, H^-1_uloc on the strip.
double density_gap(const ScalarField& a, const ScalarField& b);

/// ---- stability ----

struct StabilityOptions {
    double T = 1.0;
    double dt = 0.05;
    MarchOptions march;
    double envelope_limit = 10.0;
};

struct StabilityReport {
    std::string norm;
    bool absolute = false;    // initial difference was zero; G holds absolute gaps
    std::vector<double> t;
    std::vector<double> G;
    double slope = 0.0;       // least squares of log G against t
    double intercept = 0.0;
    double envelope_C = 0.0;  // smallest C >= 1 with G <= C e^{C t}
    bool affine_envelope = false;
};

StabilityReport stability_experiment(const ScalarField& rho01, const ScalarField& rho02,
                                     const StabilityOptions& opt = {});

/// Smallest C >= 1 with G(t_i) <= C exp(C t_i) for all samples.
double envelope_constant(const std::vector<double>& t, const std::vector<double>& G);

/// ---- windowed energy ledger ----

struct EnergyLedger {
    std::vector<std::vector<double>> E;  // E[n-1][k-1], 1 <= k <= n
    double C = 1.0;
    double F = 1.0;

    int nmax() const { return static_cast<int>(E.size()); }
    double at(int n, int k) const { return E[n - 1][k - 1]; }
};

struct LedgerViolation {
    std::string kind;  // negative, monotonicity, initial, recursion
    int n = 0;
    int k = 0;
};

struct LedgerVerdict {
    bool hypotheses_ok = true;
    std::vector<LedgerViolation> violations;
    double C0 = 0.0;
    int k0 = 0;
    bool pass = false;
    // worst case over the candidate grid alpha > C
    double worst_alpha = 0.0;
    int worst_failing_index = 0;
    double worst_bound = 0.0;
    std::string to_text() const;
};

/// Candidate alphas j/16 up to the grid limit.
std::vector<double> ledger_alpha_grid(double C);

/// Greatest k with E_{n,k} > alpha k F over all n (0 if none).
int greatest_failing_index(const EnergyLedger& L, double alpha);

/// C_alpha = C/(C+1) (1 + 1/alpha)
double ledger_c_alpha(double C, double alpha);

LedgerVerdict energy_ledger_check(const EnergyLedger& L);

/// Runs the recursion backward from E_{n,n} = s C n F with random slack.
EnergyLedger generate_ledger(int nmax, double C, double F, std::mt19937_64& rng);

}  // namespace stt
