// (-Lap_h + I) on cell centers. The walls carry homogeneous Dirichlet data by
// odd reflection (ghost = -interior), so a wall-adjacent row has diagonal
// 3/h^2 in that direction. The matrix is SPD; one LDLT per grid is cached.

#include <Eigen/SparseCholesky>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "stt/norms.hpp"

namespace stt {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Factor = Eigen::SimplicialLDLT<SpMat>;

std::shared_ptr<const Factor> build(const GridSpec& g) {
    const bool per = g.domain.periodic();
    const double ax = 1.0 / (g.hx * g.hx), az = 1.0 / (g.hz * g.hz);
    auto id = [&](int i, int k) { return i * g.nz + k; };
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(g.nx) * g.nz * 5);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const int r = id(i, k);
            double diag = 1.0;
            for (int s : {-1, 1}) {
                int j = i + s;
                if (per) {
                    j = (j + g.nx) % g.nx;
                    t.emplace_back(r, id(j, k), -ax);
                    diag += ax;
                } else if (j < 0 || j >= g.nx) {
                    diag += 2.0 * ax;
                } else {
                    t.emplace_back(r, id(j, k), -ax);
                    diag += ax;
                }
                const int m = k + s;
                if (m < 0 || m >= g.nz) {
                    diag += 2.0 * az;
                } else {
                    t.emplace_back(r, id(i, m), -az);
                    diag += az;
                }
            }
            t.emplace_back(r, r, diag);
        }
    SpMat A(g.nx * g.nz, g.nx * g.nz);
    A.setFromTriplets(t.begin(), t.end());
    auto F = std::make_shared<Factor>();
    F->compute(A);
    if (F->info() != Eigen::Success) throw NormError("Helmholtz factorization failed");
    return F;
}

using Key = std::tuple<int, int, int, double, double>;
std::mutex g_mutex;
std::map<Key, std::shared_ptr<const Factor>> g_cache;

std::shared_ptr<const Factor> factor(const GridSpec& g) {
    const Key key{int(g.domain.kind), g.nx, g.nz, g.hx, g.hz};
    std::lock_guard lock(g_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    auto F = build(g);
    g_cache.emplace(key, F);
    return F;
}

}  // namespace

namespace detail {
void clear_norm_caches() {
    std::lock_guard lock(g_mutex);
    g_cache.clear();
}
}  // namespace detail

ScalarField helmholtz_solve(const ScalarField& rho) {
    if (rho.staggering() != Staggering::Center) throw NormError("Helmholtz solve needs a cell-centered field");
    const auto F = factor(rho.grid());
    const Eigen::Map<const Eigen::VectorXd> b(rho.values().data(), static_cast<Eigen::Index>(rho.size()));
    const Eigen::VectorXd w = F->solve(b);
    return ScalarField(rho.grid(), Staggering::Center, std::vector<double>(w.data(), w.data() + w.size()));
}

}  // namespace stt
