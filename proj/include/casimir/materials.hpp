#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir {

// eps(w) = 1 - wp^2 / (w^2 + i gp w)
struct DrudeModel {
    double omega_p;  // eV
    double gamma_p;  // eV
};

// eps(w) = 1 + cl wl^2 / (wl^2 - w^2 - i gl w)
struct LorentzModel {
    double c_l;
    double omega_l;  // eV
    double gamma_l;  // eV
};

// Fixed real permittivity; the eps = 1 member is the vacuum film used by
// trivial limits.
struct ConstantEps {
    double eps = 1.0;
};

// Below the tabulated grid, Im eps follows the metallic Drude tail
// wp^2 gp / (w (w^2 + gp^2)).
struct DrudeTail {
    double omega_p;
    double gamma_p;
};

// Below the grid, Im eps is held at its lowest-grid value.
struct ConstantTail {};

using LowFreqExtrapolation = std::variant<DrudeTail, ConstantTail>;

// Above the grid, Im eps decays as (w_max / w)^exponent.
struct PowerLawDecay {
    double exponent = 3.0;
};

// Optical data on a strictly increasing photon-energy grid. (n, k) are
// interpolated linearly in log energy and squared afterward, which keeps
// Im eps = 2nk nonnegative. eps(i xi) comes from the Kramers-Kronig
// integral over Im eps with closed-form (low) and power-law (high) tails.
class TabulatedMaterial {
 public:
    TabulatedMaterial(std::vector<double> grid_ev, std::vector<double> n_values,
                      std::vector<double> k_values, LowFreqExtrapolation low,
                      PowerLawDecay high);

    std::complex<double> eps_real_axis(double omega_ev) const;
    double eps_imag_axis(double xi_ev) const;

    double n_at(double omega_ev) const;
    double k_at(double omega_ev) const;

    const std::vector<double>& grid() const { return grid_; }
    const LowFreqExtrapolation& low_extrapolation() const { return low_; }
    const PowerLawDecay& high_extrapolation() const { return high_; }

 private:
    double interp_log(const std::vector<double>& y, double omega_ev) const;
    double im_eps_at_log(double log_omega) const;  // 2 n k, one grid search

    std::vector<double> grid_;      // eV, strictly increasing
    std::vector<double> log_grid_;
    std::vector<double> n_, k_;
    LowFreqExtrapolation low_;
    PowerLawDecay high_;

    // eps(i xi) is a pure function of xi; the memo only avoids recomputing
    // the KK quadrature at xi values the pressure integrators revisit.
    // Copies share it (same data, same function).
    struct KkCache {
        std::mutex mutex;
        std::map<double, double> values;
    };
    std::shared_ptr<KkCache> cache_ = std::make_shared<KkCache>();
};

// Tagged dielectric model evaluable on the real axis (complex eps) and on
// the imaginary axis (real eps > 1, monotone decreasing). Immutable; safe
// to share across threads.
class Material {
 public:
    using Model = std::variant<DrudeModel, LorentzModel, TabulatedMaterial, ConstantEps>;

    static Material drude(double omega_p, double gamma_p, std::string name = "");
    static Material lorentz(double c_l, double omega_l, double gamma_l, std::string name = "");
    static Material tabulated(TabulatedMaterial table, std::string name = "tabulated");
    static Material vacuum();
    static Material constant_eps(double eps, std::string name = "");

    std::complex<double> eps_real_axis(double omega_ev) const;
    double eps_imag_axis(double xi_ev) const;

    // Plasma energy for thin-film mode labeling: the Drude omega_p, or the
    // Drude-tail omega_p of a tabulated metal. Absent for insulators.
    std::optional<double> plasma_energy() const;

    // Energy scale for brackets and quadrature mappings.
    double characteristic_energy() const;

    const std::string& name() const { return name_; }
    const Model& model() const { return model_; }

 private:
    Material(Model m, std::string name) : model_(std::move(m)), name_(std::move(name)) {}

    Model model_;
    std::string name_;
};

// Root of Re eps(omega) = 0 by bracketed bisection to 1e-10 relative
// tolerance. Default bracket is [0.2, 2] x characteristic_energy().
// Throws std::invalid_argument when Re eps does not change sign there.
double find_enz_frequency(const Material& m, double bracket_lo = 0.0, double bracket_hi = 0.0);

// Frequency where Re eps = -1 (single-interface SPP condition); same
// bracket and tolerance rules as find_enz_frequency.
double find_spp_frequency(const Material& m, double bracket_lo = 0.0, double bracket_hi = 0.0);

// Reads a 3-column (energy_eV, n, k) text table; '#' comments and blank
// lines allowed, whitespace or comma separated. Validation failures name
// the offending line.
TabulatedMaterial load_nk_table(const std::filesystem::path& path,
                                LowFreqExtrapolation low, PowerLawDecay high);

}  // namespace casimir
