#pragma once

#include <complex>

#include "casimir/materials.hpp"
#include "casimir/units.hpp"

namespace casimir {

enum class Polarization { te, tm };

// One freestanding film of thickness t (nm) in vacuum.
class SlabGeometry {
 public:
    SlabGeometry(double thickness_nm, Material material)
        : thickness_(thickness_nm), material_(std::move(material)) {
        if (!(thickness_ > 0.0))
            throw std::invalid_argument("SlabGeometry: thickness must be positive");
    }

    double thickness() const { return thickness_; }
    const Material& material() const { return material_; }

 private:
    double thickness_;
    Material material_;
};

// Vacuum normal wavenumber q0 = sqrt(w^2/c^2 - k^2), real >= 0 below the
// light line, +i sqrt(k^2 - w^2/c^2) above it; exactly 0 on the line.
std::complex<double> kz_vacuum_real(double omega_ev, double k_nm);

// In-medium normal wavenumber with branch Im q1 >= 0.
std::complex<double> film_kz_real(std::complex<double> eps, double omega_ev, double k_nm);

// Single vacuum|medium interface reflection, real frequency axis.
std::complex<double> fresnel_interface(std::complex<double> eps, double omega_ev,
                                       double k_nm, Polarization pol);

// Freestanding film: r = r01 (1 - e^{2i q1 t}) / (1 - r01^2 e^{2i q1 t}).
std::complex<double> slab_reflection_real(std::complex<double> eps, double thickness_nm,
                                          double omega_ev, double k_nm, Polarization pol);
std::complex<double> slab_reflection_real(const SlabGeometry& slab, double omega_ev,
                                          double k_nm, Polarization pol);

// Imaginary axis (w = i xi): everything is real, |r| < 1.
double interface_reflection_imag(double eps_ixi, double xi_ev, double k_nm, Polarization pol);
double slab_reflection_imag(double eps_ixi, double thickness_nm, double xi_ev,
                            double k_nm, Polarization pol);
double slab_reflection_imag(const SlabGeometry& slab, double xi_ev, double k_nm,
                            Polarization pol);

}  // namespace casimir
