#pragma once

// Initial density presets.
//
//   constant              rho = value
//   stratified            rho = base - gradient * z
//   stratified_perturbed  stratified + amplitude sin(2 pi mode x / Lx) sin(pi z)
//   patch                 1 inside the disc of radius r at (cx * Lx, cz), else 0
//   checker               0/1 checkerboard with `cells` squares per unit length

#include <string>
#include <vector>

#include "stt/domain.hpp"

namespace stt {

struct ScenarioParams {
    std::string generator = "stratified";
    double value = 1.0;
    double base = 1.0;
    double gradient = 1.0;
    double amplitude = 0.1;
    int mode = 1;
    double cx = 0.5;
    double cz = 0.7;
    double radius = 0.15;
    int cells = 4;

    /// Throws DomainError on unknown generators or out-of-range values.
    void validate() const;
};

const std::vector<std::string>& scenario_generators();

ScalarField make_density(const GridSpec& grid, const ScenarioParams& p);

}  // namespace stt
