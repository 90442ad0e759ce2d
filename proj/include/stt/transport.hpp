#pragma once

// Characteristics, flow maps and semi-Lagrangian push-forward.
//
// Trajectories start at cell centers and are integrated with classical RK4.
// Positions are tracked as an unwrapped displacement from the seed, so a
// zero velocity leaves every seed bit-exactly in place and strip
// trajectories that cross the period keep their true travel distance.

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "stt/domain.hpp"

namespace stt {

class TransportError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct TransportConfig {
    double dt = 1e-2;  // upper bound on the RK4 step; steps are equal per interval
    void validate() const;
};

/// Velocity as a function of time and position.
class VelocityProvider {
  public:
    virtual ~VelocityProvider() = default;
    virtual const DomainSpec& domain() const = 0;
    virtual Vec2 velocity(double t, Vec2 point) const = 0;
};

/// One grid field, constant in time.
class SteadyVelocity final : public VelocityProvider {
  public:
    explicit SteadyVelocity(VelocityField u);
    const DomainSpec& domain() const override { return u_.domain(); }
    Vec2 velocity(double t, Vec2 point) const override;
    const VelocityField& field() const { return u_; }

  private:
    VelocityField u_;
};

/// Grid fields at increasing time nodes, linear in time between nodes and
/// held constant outside [t_first, t_last].
class VelocityHistory final : public VelocityProvider {
  public:
    VelocityHistory(std::vector<double> times, std::vector<VelocityField> fields);
    const DomainSpec& domain() const override { return fields_.front().domain(); }
    Vec2 velocity(double t, Vec2 point) const override;
    const std::vector<double>& times() const { return times_; }
    const std::vector<VelocityField>& fields() const { return fields_; }

  private:
    std::vector<double> times_;
    std::vector<VelocityField> fields_;
};

/// Closed-form velocity; the function must vanish where the walls require.
class AnalyticVelocity final : public VelocityProvider {
  public:
    using Fn = std::function<Vec2(double, Vec2)>;
    AnalyticVelocity(DomainSpec domain, Fn fn) : domain_(domain), fn_(std::move(fn)) {}
    const DomainSpec& domain() const override { return domain_; }
    Vec2 velocity(double t, Vec2 point) const override { return fn_(t, point); }

  private:
    DomainSpec domain_;
    Fn fn_;
};

/// X(t1, t0, .) sampled at cell centers as displacements from the seeds.
struct FlowMap {
    GridSpec grid;
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<double> dx;  // center layout, i * nz + k
    std::vector<double> dz;

    Vec2 seed(int i, int k) const;
    /// Image of seed (i, k); x is not wrapped.
    Vec2 image(int i, int k) const;
    /// Image wrapped into the fundamental domain.
    Vec2 image_wrapped(int i, int k) const;
    std::size_t size() const { return dx.size(); }
};

/// Position after integrating from (t0, p) to t1. Reverse time allowed.
Vec2 trace_point(const VelocityProvider& u, double t0, double t1, Vec2 p, const TransportConfig& cfg);

FlowMap integrate_flow(const VelocityProvider& u, const GridSpec& grid, double t0, double t1,
                       const TransportConfig& cfg = {});

/// rho(t1) = rho(t0) o X(t0, t1, .), by backward characteristics from every
/// cell center and bilinear sampling of rho(t0).
ScalarField push_forward(const ScalarField& rho, const VelocityProvider& u, double t0, double t1,
                         const TransportConfig& cfg = {});

/// Samples a cell-centered field at the (unwrapped) feet of a flow map.
ScalarField compose(const ScalarField& rho, const FlowMap& feet);

/// Max over seeds of |X(t,s) o X(s,r) - X(t,r)|. Each of the three legs is
/// traced with `steps` equal RK4 steps, so doubling `steps` halves every
/// step size exactly.
double composition_defect(const VelocityProvider& u, const GridSpec& grid, double r, double s, double t, int steps);

/// Frobenius norm of the entrywise maxima of the finite-difference
/// velocity gradient, wall differences included. This bounds the Lipschitz
/// constant of the bilinear interpolant.
double gradient_sup(const VelocityField& u);

struct LipschitzReport {
    double measured_lip = 0.0;
    double bound = 0.0;
    bool violation = false;
};

/// measured: max over neighbouring seeds of |X(a) - X(b)| / |a - b|;
/// bound: exp(|t1 - t0| * grad_sup).
LipschitzReport lipschitz_growth(const FlowMap& X, double grad_sup);
LipschitzReport lipschitz_growth(const FlowMap& X, const VelocityField& u);

enum class NormKind { L2, Linf };

struct FlowStabilityReport {
    double lhs = 0.0;  // |X1 - X2|_q at t1
    double rhs = 0.0;  // |t| exp(|t| |grad u1|) sup_t |u1 - u2|_q
    double ratio = 0.0;
    bool violation = false;
};

/// Both maps over the same interval and grid. velocity_gap is
/// sup_t |u1 - u2|_q in the matching norm, grad_sup1 the gradient bound of u1.
FlowStabilityReport flow_stability(const FlowMap& X1, const FlowMap& X2, double grad_sup1, double velocity_gap,
                                   NormKind q);
/// Steady fields: the gap is measured on the MAC samples of u1 - u2.
FlowStabilityReport flow_stability(const FlowMap& X1, const FlowMap& X2, const VelocityField& u1,
                                   const VelocityField& u2, NormKind q);

/// Flow maps in the STF1 container (staggering 3, channels dx, dz).
void write_flow_map(std::ostream& os, const FlowMap& X);
FlowMap read_flow_map(std::istream& is);

}  // namespace stt
