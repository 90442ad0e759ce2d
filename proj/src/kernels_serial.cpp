#include <atomic>

#include "stt/kernels.hpp"
#include "stt/transport.hpp"

namespace stt::kernels {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

void set_default_exec(Exec e) { g_exec.store(e); }
Exec default_exec() { return g_exec.load(); }

void trace_seeds_serial(const VelocityProvider& u, const GridSpec& g, double t0, double t1,
                        const TransportConfig& cfg, double* dx, double* dz) {
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const Vec2 s{(i + 0.5) * g.hx, (k + 0.5) * g.hz};
            const Vec2 p = trace_point(u, t0, t1, s, cfg);
            const std::size_t j = static_cast<std::size_t>(i) * g.nz + k;
            dx[j] = p.x - s.x;
            dz[j] = p.z - s.z;
        }
}

void sample_feet_serial(const ScalarField& rho, const double* dx, const double* dz, double* out) {
    const GridSpec& g = rho.grid();
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const std::size_t j = static_cast<std::size_t>(i) * g.nz + k;
            out[j] = interpolate_center_index(rho, i + dx[j] / g.hx, k + dz[j] / g.hz);
        }
}

double tensor_dot_serial(const double* a, const double* b, const double* wx, int nx, const double* wz, int nz) {
    double total = 0.0;
    for (int i = 0; i < nx; ++i) {
        double row = 0.0;
        const std::size_t o = static_cast<std::size_t>(i) * nz;
        for (int k = 0; k < nz; ++k) row += wz[k] * a[o + k] * b[o + k];
        total += wx[i] * row;
    }
    return total;
}

void trace_seeds(const VelocityProvider& u, const GridSpec& g, double t0, double t1, const TransportConfig& cfg,
                 double* dx, double* dz, Exec e) {
    if (e == Exec::Serial)
        trace_seeds_serial(u, g, t0, t1, cfg, dx, dz);
    else
        trace_seeds_omp(u, g, t0, t1, cfg, dx, dz);
}

void sample_feet(const ScalarField& rho, const double* dx, const double* dz, double* out, Exec e) {
    if (e == Exec::Serial)
        sample_feet_serial(rho, dx, dz, out);
    else
        sample_feet_omp(rho, dx, dz, out);
}

double tensor_dot(const double* a, const double* b, const double* wx, int nx, const double* wz, int nz, Exec e) {
    return e == Exec::Serial ? tensor_dot_serial(a, b, wx, nx, wz, nz) : tensor_dot_omp(a, b, wx, nx, wz, nz);
}

}  // namespace stt::kernels
