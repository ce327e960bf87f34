#pragma once

#include <stdexcept>

// Unit system used throughout: photon energies in eV (the symbol omega is
// used interchangeably with its energy hbar*omega), lengths in nm, pressures
// in Pa. All integrands work in eV/nm units; the single conversion to SI
// happens at pressure output.

namespace casimir::units {

inline constexpr double hbar_c = 197.3269804;      // eV nm
inline constexpr double c_light = 299792458.0;     // m/s
inline constexpr double hbar = 6.582119569e-16;    // eV s

// 1 eV/nm^3 expressed in Pa (elementary charge is exact in SI).
inline constexpr double ev_per_nm3_to_pa = 1.602176634e8;

// E[eV] -> omega/c [1/nm]
inline double energy_to_vacuum_wavenumber(double energy_ev) {
    if (energy_ev < 0.0)
        throw std::invalid_argument("energy_to_vacuum_wavenumber: negative energy");
    return energy_ev / hbar_c;
}

// lambda_p = 2 pi c / omega_p, in nm
inline double plasma_wavelength(double omega_p_ev) {
    if (!(omega_p_ev > 0.0))
        throw std::invalid_argument("plasma_wavelength: omega_p must be positive");
    return 2.0 * 3.14159265358979323846 * hbar_c / omega_p_ev;
}

inline double energy_to_angular_frequency(double energy_ev) {   // rad/s
    return energy_ev / hbar;
}

inline double angular_frequency_to_energy(double omega_rad_s) { // eV
    return omega_rad_s * hbar;
}

}  // namespace casimir::units
