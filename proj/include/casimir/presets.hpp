#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir {

// Figure presets pin the reference parameter sets in code: Drude
// (omega_p = 3 eV, gamma_p = 0.035 eV), Lorentz (C = 1, omega_0 = 15 eV,
// gamma = 0.01 eV), t in {2, 200} nm, d in {10, 100, 1000} nm, plus the
// bundled Au/SiO2 tables. Each preset writes one CSV per panel and a
// manifest.json recording every setting and tolerance.
std::vector<std::filesystem::path> run_figure_preset(
    const std::string& name, const std::filesystem::path& outdir,
    const std::filesystem::path& data_dir, const QuadratureSettings& quad = {});

std::vector<std::string> known_presets();

}  // namespace casimir
