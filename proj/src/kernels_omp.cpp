#include <exception>
#include <vector>

#include "stt/kernels.hpp"
#include "stt/transport.hpp"

namespace stt::kernels {

// Exceptions must not cross the parallel region; the first one is rethrown.
void trace_seeds_omp(const VelocityProvider& u, const GridSpec& g, double t0, double t1,
                     const TransportConfig& cfg, double* dx, double* dz) {
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < g.nx; ++i) {
        try {
            for (int k = 0; k < g.nz; ++k) {
                const Vec2 s{(i + 0.5) * g.hx, (k + 0.5) * g.hz};
                const Vec2 p = trace_point(u, t0, t1, s, cfg);
                const std::size_t j = static_cast<std::size_t>(i) * g.nz + k;
                dx[j] = p.x - s.x;
                dz[j] = p.z - s.z;
            }
        } catch (...) {
#pragma omp critical(stt_trace_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

void sample_feet_omp(const ScalarField& rho, const double* dx, const double* dz, double* out) {
    const GridSpec& g = rho.grid();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const std::size_t j = static_cast<std::size_t>(i) * g.nz + k;
            out[j] = interpolate_center_index(rho, i + dx[j] / g.hx, k + dz[j] / g.hz);
        }
}

double tensor_dot_omp(const double* a, const double* b, const double* wx, int nx, const double* wz, int nz) {
    std::vector<double> rows(static_cast<std::size_t>(nx));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        double row = 0.0;
        const std::size_t o = static_cast<std::size_t>(i) * nz;
        for (int k = 0; k < nz; ++k) row += wz[k] * a[o + k] * b[o + k];
        rows[i] = row;
    }
    double total = 0.0;
    for (int i = 0; i < nx; ++i) total += wx[i] * rows[i];
    return total;
}

}  // namespace stt::kernels
