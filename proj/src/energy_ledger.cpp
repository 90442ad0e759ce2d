#include <algorithm>
#include <cmath>
#include <sstream>

#include "stt/coupling.hpp"

namespace stt {

namespace {
constexpr double kRel = 1e-12;

bool exceeds(double lhs, double rhs) { return lhs > rhs + kRel * std::max(std::abs(lhs), std::abs(rhs)); }
}  // namespace

double ledger_c_alpha(double C, double alpha) { return C / (C + 1.0) * (1.0 + 1.0 / alpha); }

std::vector<double> ledger_alpha_grid(double C) {
    std::vector<double> g;
    const int jmax = static_cast<int>(std::ceil(16.0 * (8.0 * std::max(C, 1.0) + 4.0)));
    for (int j = 1; j <= jmax; ++j) g.push_back(j / 16.0);
    return g;
}

int greatest_failing_index(const EnergyLedger& L, double alpha) {
    int worst = 0;
    for (int n = 1; n <= L.nmax(); ++n)
        for (int k = n; k > worst; --k)
            if (exceeds(L.at(n, k), alpha * k * L.F)) {
                worst = k;
                break;
            }
    return worst;
}

LedgerVerdict energy_ledger_check(const EnergyLedger& L) {
    LedgerVerdict v;
    if (!(L.C > 0.0) || !(L.F > 0.0)) throw CouplingError("ledger constants C and F must be positive");
    for (int n = 1; n <= L.nmax(); ++n) {
        if (static_cast<int>(L.E[n - 1].size()) != n) throw CouplingError("ledger row n must hold n entries");
        for (int k = 1; k <= n; ++k) {
            const double e = L.at(n, k);
            if (!(e >= 0.0)) v.violations.push_back({"negative", n, k});
            if (k < n && exceeds(e, L.at(n, k + 1))) v.violations.push_back({"monotonicity", n, k});
            if (k < n && exceeds(e, L.C * (L.at(n, k + 1) - e + (k + 1) * L.F)))
                v.violations.push_back({"recursion", n, k});
        }
        if (exceeds(L.at(n, n), L.C * n * L.F)) v.violations.push_back({"initial", n, n});
    }
    v.hypotheses_ok = v.violations.empty();
    if (!v.hypotheses_ok) return v;

    const std::vector<double> grid = ledger_alpha_grid(L.C);
    for (double a : grid) {
        const int kf = greatest_failing_index(L, a);
        if (kf + 1 <= L.nmax()) {
            v.C0 = a;
            v.k0 = kf + 1;
            break;
        }
    }
    v.pass = true;
    double worst_margin = -INFINITY;
    for (double a : grid) {
        if (!(a > L.C)) continue;
        const double ca = ledger_c_alpha(L.C, a);
        const double bound = ca / (1.0 - ca);
        const int kf = greatest_failing_index(L, a);
        if (kf - bound > worst_margin) {
            worst_margin = kf - bound;
            v.worst_alpha = a;
            v.worst_failing_index = kf;
            v.worst_bound = bound;
        }
        if (kf > bound * (1.0 + kRel)) v.pass = false;
    }
    return v;
}

std::string LedgerVerdict::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "hypotheses_ok = " << (hypotheses_ok ? "true" : "false") << "\n";
    for (const auto& x : violations) os << "violation = " << x.kind << " n=" << x.n << " k=" << x.k << "\n";
    os << "C0 = " << C0 << "\nk0 = " << k0 << "\npass = " << (pass ? "true" : "false") << "\n";
    os << "worst_alpha = " << worst_alpha << "\nworst_failing_index = " << worst_failing_index
       << "\nworst_bound = " << worst_bound << "\n";
    return os.str();
}

EnergyLedger generate_ledger(int nmax, double C, double F, std::mt19937_64& rng) {
    if (nmax < 1) throw CouplingError("ledger needs nmax >= 1");
    std::uniform_real_distribution<double> slack(0.0, 1.0);
    EnergyLedger L;
    L.C = C;
    L.F = F;
    L.E.resize(nmax);
    for (int n = 1; n <= nmax; ++n) {
        auto& row = L.E[n - 1];
        row.assign(n, 0.0);
        row[n - 1] = (1.0 - 0.5 * slack(rng)) * C * n * F;
        for (int k = n - 1; k >= 1; --k) {
            const double next = row[k];
            const double cap = std::min(next, C * (next + (k + 1) * F) / (1.0 + C));
            row[k - 1] = (1.0 - slack(rng) * slack(rng)) * cap;
        }
    }
    return L;
}

}  // namespace stt
