#pragma once

// Hot loops in two builds: a plain serial reference and an OpenMP version.
// Both produce bit-identical results; reductions sum per-row partials in row
// order so the parallel schedule never changes the rounding.

#include "stt/domain.hpp"

namespace stt {
class VelocityProvider;
struct TransportConfig;
}  // namespace stt

namespace stt::kernels {

enum class Exec { Serial, Parallel };

/// Process-wide default used by the library entry points.
void set_default_exec(Exec e);
Exec default_exec();

/// Traces every cell-center seed from t0 to t1 and stores the displacement
/// (unwrapped in x) in dx, dz (center layout).
void trace_seeds_serial(const VelocityProvider& u, const GridSpec& g, double t0, double t1,
                        const TransportConfig& cfg, double* dx, double* dz);
void trace_seeds_omp(const VelocityProvider& u, const GridSpec& g, double t0, double t1,
                     const TransportConfig& cfg, double* dx, double* dz);

/// out(i, k) = rho at index coordinates (i + dx/hx, k + dz/hz).
void sample_feet_serial(const ScalarField& rho, const double* dx, const double* dz, double* out);
void sample_feet_omp(const ScalarField& rho, const double* dx, const double* dz, double* out);

/// sum_i wx[i] * (sum_k wz[k] * a[i*nz+k] * b[i*nz+k])
double tensor_dot_serial(const double* a, const double* b, const double* wx, int nx, const double* wz, int nz);
double tensor_dot_omp(const double* a, const double* b, const double* wx, int nx, const double* wz, int nz);

void trace_seeds(const VelocityProvider& u, const GridSpec& g, double t0, double t1, const TransportConfig& cfg,
                 double* dx, double* dz, Exec e = default_exec());
void sample_feet(const ScalarField& rho, const double* dx, const double* dz, double* out, Exec e = default_exec());
double tensor_dot(const double* a, const double* b, const double* wx, int nx, const double* wz, int nz,
                  Exec e = default_exec());

}  // namespace stt::kernels
