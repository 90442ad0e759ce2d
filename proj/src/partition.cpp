#include <cmath>

#include "stt/norms.hpp"

namespace stt {

Partition::Partition(int L) : period(L) {
    if (L < 8) throw NormError("partition period must be an integer >= 8");
}

Partition::Partition(const DomainSpec& strip) : Partition(strip.period()) {}

double Partition::smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double Partition::profile(double y) {
    if (y <= -1.0 || y >= 2.0) return 0.0;
    if (y < 0.0) return smoothstep(y + 1.0);
    if (y <= 1.0) return 1.0;
    return 1.0 - smoothstep(y - 1.0);
}

double Partition::chi(int k, double x) const {
    // reduce x - k into [-1, L - 1)
    double y = std::fmod(x - k + 1.0, double(period));
    if (y < 0.0) y += period;
    return profile(y - 1.0);
}

double Partition::sum(double x) const {
    double s = 0.0;
    for (int k = 0; k < period; ++k) s += chi(k, x);
    return s;
}

ScalarField Partition::cutoff(int k, const GridSpec& g, Staggering s) const {
    return sample(g, s, [&](double x, double) { return chi(k, x); });
}

double Partition::equivalence_constant(int m) {
    if (m == 0) return 1.0;
    if (m == 1) return std::sqrt(1.0 + 4.0 * max_slope * max_slope);
    throw NormError("equivalence constant is documented for m = 0, 1 only");
}

}  // namespace stt
