#pragma once

#include <vector>

#include "casimir/lifshitz_imaginary.hpp"

namespace casimir {

// Spectral pressure density at one real frequency, split by transverse
// sector and polarization. Units: Pa/eV, so a plain trapezoid over an eV
// grid returns Pa.
struct SpectralDensity {
    double evanescent_te = 0.0;
    double evanescent_tm = 0.0;
    double propagating_te = 0.0;
    double propagating_tm = 0.0;
    long long evaluations = 0;

    double evanescent() const { return evanescent_te + evanescent_tm; }
    double propagating() const { return propagating_te + propagating_tm; }
    double total() const { return evanescent() + propagating(); }
};

//   p(w) = (hbar/2 pi^2) sum_p int_0^inf k dk Re[ q0 r_p^2 e^{2i q0 d}
//                                                 / (1 - r_p^2 e^{2i q0 d}) ]
// The k integral runs over q0 below the light line (propagating sector,
// phase-node panels at q0 d = m pi/2) and over kappa = Im q0 above it
// (evanescent sector, truncated at 2 kappa d = 60, nonzero only through
// material loss). The sector/polarization pieces sum to the density whose
// w-integral equals total_pressure.
SpectralDensity spectral_density(const CavityConfig& cfg, double omega_ev,
                                 const QuadratureSettings& quad = {});

class ForceSpectrum {
 public:
    ForceSpectrum(CavityConfig cfg, std::vector<double> omega,
                  std::vector<SpectralDensity> values);

    const CavityConfig& config() const { return cfg_; }
    const std::vector<double>& omega() const { return omega_; }
    std::size_t size() const { return omega_.size(); }

    double p_total(std::size_t i) const { return v_[i].total(); }
    double p_evanescent(std::size_t i) const { return v_[i].evanescent(); }
    double p_propagating(std::size_t i) const { return v_[i].propagating(); }
    const SpectralDensity& density(std::size_t i) const { return v_[i]; }

 private:
    CavityConfig cfg_;
    std::vector<double> omega_;
    std::vector<SpectralDensity> v_;
};

struct GridPolicy {
    int points = 600;               // base uniform grid
    double peak_rel_tol = 0.005;    // refine until peaks are stable to 0.5%
    int max_refine_rounds = 12;
    double prominence_rel = 1e-3;   // extrema below this fraction of max |p| ignored
    double integral_rel_tol = 1e-3; // resolve the curve until the local trapezoid
                                    // error falls below this fraction of int |p|
    int max_points = 20000;
};

// Samples spectral_density over [omega_min, omega_max]; grid points are
// evaluated concurrently with results assembled in grid order (bitwise
// independent of the thread count), then refined by bisection around
// detected extrema of the evanescent and total channels until their
// positions are stable.
ForceSpectrum force_spectrum(const CavityConfig& cfg, double omega_min, double omega_max,
                             const GridPolicy& grid = {},
                             const QuadratureSettings& quad = {});

struct SpectrumIntegral {
    double pressure_pa = 0.0;
    double tail_bound_pa = 0.0;  // bound on the omitted high-frequency part
};

SpectrumIntegral integrate_spectrum_detailed(const ForceSpectrum& spec);

// Trapezoid integral of p_total plus the high-frequency tail check.
// Throws convergence_error when the tail bound exceeds 5% of the integral.
double integrate_spectrum(const ForceSpectrum& spec);

}  // namespace casimir
