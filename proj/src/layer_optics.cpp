#include "casimir/layer_optics.hpp"

#include <cmath>

namespace casimir {

namespace {

void check_real_axis_args(double omega_ev, double k_nm) {
    if (!(omega_ev > 0.0))
        throw std::invalid_argument("layer_optics: omega must be positive");
    if (k_nm < 0.0)
        throw std::invalid_argument("layer_optics: k must be nonnegative");
}

// e^{2 i q1 t} with the underflow guard: once the film absorbs everything
// the exponential is set to exactly zero.
std::complex<double> round_trip_phase(std::complex<double> q1, double t) {
    if (q1.imag() * t > 350.0) return {0.0, 0.0};
    return std::exp(std::complex<double>(0.0, 2.0 * t) * q1);
}

}  // namespace

std::complex<double> kz_vacuum_real(double omega_ev, double k_nm) {
    check_real_axis_args(omega_ev, k_nm);
    const double w_c = omega_ev / units::hbar_c;
    const double d2 = (w_c - k_nm) * (w_c + k_nm);
    if (d2 >= 0.0) return {std::sqrt(d2), 0.0};
    return {0.0, std::sqrt(-d2)};
}

std::complex<double> film_kz_real(std::complex<double> eps, double omega_ev, double k_nm) {
    check_real_axis_args(omega_ev, k_nm);
    const double w_c = omega_ev / units::hbar_c;
    std::complex<double> q1 = std::sqrt(eps * w_c * w_c - k_nm * k_nm);
    if (q1.imag() < 0.0) q1 = -q1;
    return q1;
}

std::complex<double> fresnel_interface(std::complex<double> eps, double omega_ev,
                                       double k_nm, Polarization pol) {
    if (eps == std::complex<double>(1.0, 0.0)) {
        check_real_axis_args(omega_ev, k_nm);
        return {0.0, 0.0};
    }
    const std::complex<double> q0 = kz_vacuum_real(omega_ev, k_nm);
    const std::complex<double> q1 = film_kz_real(eps, omega_ev, k_nm);
    if (pol == Polarization::te) return (q0 - q1) / (q0 + q1);
    return (eps * q0 - q1) / (eps * q0 + q1);
}

std::complex<double> slab_reflection_real(std::complex<double> eps, double thickness_nm,
                                          double omega_ev, double k_nm, Polarization pol) {
    if (eps == std::complex<double>(1.0, 0.0)) {
        check_real_axis_args(omega_ev, k_nm);
        return {0.0, 0.0};
    }
    const std::complex<double> r01 = fresnel_interface(eps, omega_ev, k_nm, pol);
    const std::complex<double> q1 = film_kz_real(eps, omega_ev, k_nm);
    const std::complex<double> e = round_trip_phase(q1, thickness_nm);
    return r01 * (1.0 - e) / (1.0 - r01 * r01 * e);
}

std::complex<double> slab_reflection_real(const SlabGeometry& slab, double omega_ev,
                                          double k_nm, Polarization pol) {
    return slab_reflection_real(slab.material().eps_real_axis(omega_ev), slab.thickness(),
                                omega_ev, k_nm, pol);
}

double interface_reflection_imag(double eps_ixi, double xi_ev, double k_nm,
                                 Polarization pol) {
    if (!(xi_ev > 0.0))
        throw std::invalid_argument("layer_optics: xi must be positive");
    if (k_nm < 0.0)
        throw std::invalid_argument("layer_optics: k must be nonnegative");
    const double xi_c = xi_ev / units::hbar_c;
    // same expression as kap1 so eps = 1 yields r = 0 exactly
    const double kap0 = std::sqrt(k_nm * k_nm + xi_c * xi_c);
    const double kap1 = std::sqrt(k_nm * k_nm + eps_ixi * xi_c * xi_c);
    if (pol == Polarization::te) return (kap0 - kap1) / (kap0 + kap1);
    return (eps_ixi * kap0 - kap1) / (eps_ixi * kap0 + kap1);
}

double slab_reflection_imag(double eps_ixi, double thickness_nm, double xi_ev,
                            double k_nm, Polarization pol) {
    const double r = interface_reflection_imag(eps_ixi, xi_ev, k_nm, pol);
    const double xi_c = xi_ev / units::hbar_c;
    const double kap1 = std::sqrt(k_nm * k_nm + eps_ixi * xi_c * xi_c);
    const double x = 2.0 * kap1 * thickness_nm;
    const double e = (x > 700.0) ? 0.0 : std::exp(-x);
    return r * (1.0 - e) / (1.0 - r * r * e);
}

double slab_reflection_imag(const SlabGeometry& slab, double xi_ev, double k_nm,
                            Polarization pol) {
    return slab_reflection_imag(slab.material().eps_imag_axis(xi_ev), slab.thickness(),
                                xi_ev, k_nm, pol);
}

}  // namespace casimir
