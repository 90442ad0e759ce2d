#include "stt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stt {

const std::vector<std::string>& scenario_generators() {
    static const std::vector<std::string> names{"constant", "stratified", "stratified_perturbed", "patch", "checker"};
    return names;
}

void ScenarioParams::validate() const {
    const auto& names = scenario_generators();
    if (std::find(names.begin(), names.end(), generator) == names.end())
        throw DomainError("unknown scenario generator '" + generator + "'");
    for (double v : {value, base, gradient, amplitude, cx, cz, radius})
        if (!std::isfinite(v)) throw DomainError("scenario parameters must be finite");
    if (mode < 0) throw DomainError("scenario mode must be >= 0");
    if (!(radius > 0.0 && radius <= 0.5)) throw DomainError("patch radius must lie in (0, 0.5]");
    if (!(cx >= 0.0 && cx <= 1.0) || !(cz >= 0.0 && cz <= 1.0))
        throw DomainError("patch center must lie in the unit square of relative coordinates");
    if (cells < 1) throw DomainError("checker cells must be >= 1");
}

ScalarField make_density(const GridSpec& g, const ScenarioParams& p) {
    p.validate();
    const double Lx = g.domain.x_extent;
    const double pi = std::numbers::pi;
    if (p.generator == "constant") return sample(g, Staggering::Center, [&](double, double) { return p.value; });
    if (p.generator == "stratified")
        return sample(g, Staggering::Center, [&](double, double z) { return p.base - p.gradient * z; });
    if (p.generator == "stratified_perturbed")
        return sample(g, Staggering::Center, [&](double x, double z) {
            return p.base - p.gradient * z + p.amplitude * std::sin(2.0 * pi * p.mode * x / Lx) * std::sin(pi * z);
        });
    if (p.generator == "patch")
        return sample(g, Staggering::Center, [&](double x, double z) {
            const double dx = x - p.cx * Lx, dz = z - p.cz;
            return dx * dx + dz * dz < p.radius * p.radius ? 1.0 : 0.0;
        });
    return sample(g, Staggering::Center, [&](double x, double z) {
        const long a = static_cast<long>(std::floor(x * p.cells)) + static_cast<long>(std::floor(z * p.cells));
        return (a % 2 == 0) ? 1.0 : 0.0;
    });
}

}  // namespace stt
