#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

enum class Task { pressure, spectrum, modes, fom };

std::string to_string(Task t);

// Inline material spec, e.g. "drude:3,0.035", "lorentz:1,15,0.01", "au",
// "sio2", "vacuum", or a path to an n,k table.
struct MaterialSpec {
    std::string text;
    std::optional<DrudeTail> nk_low_drude;  // table extrapolation overrides
    bool nk_low_constant = false;
    double nk_high_exponent = 3.0;
};

// One reproducible run: material + geometry grids + task options. All
// defaults are filled in by parse_scenario and echoed into output headers.
struct Scenario {
    Task task = Task::pressure;
    MaterialSpec material;
    std::vector<double> t_nm;  // one or more thicknesses
    std::vector<double> d_nm;  // one or more separations
    double omega_min_ev = 0.05;
    double omega_max_ev = 0.0;  // 0 = auto (2 x characteristic energy)
    int spectrum_points = 600;
    double rel_tol = 1e-9;
    long long max_evals = 5'000'000;
    bool find_optimum = false;
    std::string output;  // empty = stdout

    // header echo of every setting that affected the numbers, sorted by key
    std::vector<std::pair<std::string, std::string>> header_entries() const;

    QuadratureSettings quadrature() const {
        QuadratureSettings q;
        q.rel_tol = rel_tol;
        q.max_evals = max_evals;
        return q;
    }
};

// Parses a key = value scenario document ('#' comments allowed). Unknown
// keys, missing required keys and malformed grids are reported with the
// line number and key name.
Scenario parse_scenario(const std::string& text);

// Resolves a material spec against the data directory (for the named au /
// sio2 tables or user table paths).
Material resolve_material(const MaterialSpec& spec, const std::filesystem::path& data_dir);

// Grid syntax: "2", "10,100,1000", "log:0.5,500,24", "lin:1,6,11";
// values accept nm / um suffixes (energies: eV).
std::vector<double> parse_grid(const std::string& text, const std::string& key);
double parse_length_nm(const std::string& text, const std::string& key);

std::filesystem::path default_data_dir();

}  // namespace casimir
