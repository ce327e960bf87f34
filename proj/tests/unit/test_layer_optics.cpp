#include <doctest.h>

#include <cmath>
#include <complex>

#include "casimir/layer_optics.hpp"

using namespace casimir;
using cplx = std::complex<double>;

namespace {

// tiny LCG so the branch-flip points are reproducible
struct Lcg {
    std::uint64_t s = 0x9e3779b97f4a7c15ull;
    double next(double lo, double hi) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return lo + (hi - lo) * static_cast<double>(s >> 11) / 9007199254740992.0;
    }
};

}  // namespace

TEST_SUITE_BEGIN("layer_optics");

TEST_CASE("vacuum normal wavenumber branches") {
    const double omega = 0.02 * units::hbar_c;  // omega/c = 0.02 1/nm
    CHECK(kz_vacuum_real(omega, 0.0) == cplx(0.02, 0.0));
    CHECK(kz_vacuum_real(omega, 0.02) == cplx(0.0, 0.0));
    const cplx ev = kz_vacuum_real(omega, 0.025);
    CHECK(ev.real() == 0.0);
    CHECK(ev.imag() == doctest::Approx(0.015).epsilon(1e-12));
    CHECK_THROWS_AS(kz_vacuum_real(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(kz_vacuum_real(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("no interface, no reflection") {
    for (double k : {0.0, 0.01, 0.05}) {
        for (auto pol : {Polarization::te, Polarization::tm}) {
            CHECK(std::abs(fresnel_interface(cplx(1.0, 0.0), 2.0, k, pol)) < 1e-15);
        }
    }
}

TEST_CASE("perfect-conductor limit") {
    const cplx eps(-1e10, 1e4);
    const cplx rte = fresnel_interface(eps, 2.0, 0.004, Polarization::te);
    const cplx rtm = fresnel_interface(eps, 2.0, 0.004, Polarization::tm);
    CHECK(rte.real() == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(rtm.real() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("TM surface-mode enhancement near Re eps = -1") {
    const Material m = Material::drude(3.0, 0.035);
    const double omega = 2.1213;
    const cplx eps = m.eps_real_axis(omega);
    const double w_c = omega / units::hbar_c;
    const double r_ev = std::abs(fresnel_interface(eps, omega, 3.0 * w_c, Polarization::tm));
    const double r_prop = std::abs(fresnel_interface(eps, omega, 0.5 * w_c, Polarization::tm));
    CHECK(r_ev > 10.0 * r_prop);
}

TEST_CASE("Brewster: polarization wiring") {
    const cplx eps(2.0, 0.0);
    const double omega = 2.0;
    const double w_c = omega / units::hbar_c;
    const double k_brewster = w_c * std::sqrt(2.0 / 3.0);
    CHECK(std::abs(fresnel_interface(eps, omega, k_brewster, Polarization::tm)) < 1e-10);
    CHECK(std::abs(fresnel_interface(eps, omega, k_brewster, Polarization::te)) > 0.1);
    // normal incidence: TE and TM conventions differ by sign
    const cplx rte0 = fresnel_interface(eps, omega, 0.0, Polarization::te);
    const cplx rtm0 = fresnel_interface(eps, omega, 0.0, Polarization::tm);
    CHECK(std::abs(rte0 + rtm0) < 1e-14);
}

TEST_CASE("slab reaches the bulk limit for a thick lossy film") {
    const Material m = Material::drude(3.0, 0.035);
    const double t = 1000.0;
    for (double omega : {1.0, 2.0, 2.8}) {
        const cplx eps = m.eps_real_axis(omega);
        for (double kmul : {1.5, 3.0}) {
            const double k = kmul * omega / units::hbar_c;
            const cplx q1 = film_kz_real(eps, omega, k);
            if (q1.imag() * t < 14.0) continue;
            for (auto pol : {Polarization::te, Polarization::tm}) {
                const cplx rs = slab_reflection_real(eps, t, omega, k, pol);
                const cplx r0 = fresnel_interface(eps, omega, k, pol);
                CHECK(std::abs(rs - r0) < 1e-6);
            }
        }
    }
}

TEST_CASE("vacuum film reflects nothing") {
    const SlabGeometry slab(5.0, Material::vacuum());
    CHECK(std::abs(slab_reflection_real(slab, 2.0, 0.01, Polarization::tm)) < 1e-15);
    CHECK(std::abs(slab_reflection_imag(slab, 2.0, 0.01, Polarization::tm)) < 1e-15);
}

TEST_CASE("ultrathin film resonance absent in the thick film") {
    const Material m = Material::drude(3.0, 0.035);
    double max_thin = 0.0, max_thick = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double omega = 2.5 + (3.3 - 2.5) * i / 300.0;
        const cplx eps = m.eps_real_axis(omega);
        const double k = 10.0 * omega / units::hbar_c;
        max_thin = std::max(max_thin,
                            std::abs(slab_reflection_real(eps, 2.0, omega, k, Polarization::tm)));
        max_thick = std::max(max_thick, std::abs(slab_reflection_real(eps, 200.0, omega, k,
                                                                      Polarization::tm)));
    }
    CHECK(max_thin > 3.0 * max_thick);
}

TEST_CASE("imaginary-axis slab value matches an independent transcription") {
    // independent evaluation of the closed-form expressions, no library calls
    const double xi = 1.0, k = 0.01, t = 200.0;
    const double eps = 1.0 + 9.0 / (xi * xi + 0.035 * xi);
    const double xi_c = xi / 197.3269804;
    const double kap0 = std::sqrt(k * k + xi_c * xi_c);
    const double kap1 = std::sqrt(k * k + eps * xi_c * xi_c);
    const double r_tm = (eps * kap0 - kap1) / (eps * kap0 + kap1);
    const double e = std::exp(-2.0 * kap1 * t);
    const double expected = r_tm * (1.0 - e) / (1.0 - r_tm * r_tm * e);

    const SlabGeometry slab(t, Material::drude(3.0, 0.035));
    CHECK(slab_reflection_imag(slab, xi, k, Polarization::tm) ==
          doctest::Approx(expected).epsilon(1e-14));

    // bulk limit: t -> infinity recovers the single interface
    CHECK(slab_reflection_imag(eps, 1e9, xi, k, Polarization::tm) ==
          doctest::Approx(r_tm).epsilon(1e-14));
}

TEST_CASE("imaginary-axis reflection is real and bounded below 1") {
    for (const auto& m : {Material::drude(3.0, 0.035), Material::lorentz(1.0, 15.0, 0.01)}) {
        for (int i = 0; i < 20; ++i) {
            const double xi = 0.01 * std::pow(1e4, i / 19.0);
            const double eps = m.eps_imag_axis(xi);
            for (int j = 0; j < 20; ++j) {
                const double k = 1e-4 * std::pow(1e4, j / 19.0);
                for (double t : {1.0, 5.0, 20.0, 100.0, 1000.0}) {
                    for (auto pol : {Polarization::te, Polarization::tm}) {
                        const double r = slab_reflection_imag(eps, t, xi, k, pol);
                        CHECK(std::abs(r) < 1.0);
                        CHECK(std::isfinite(r));
                    }
                }
            }
        }
    }
}

TEST_CASE("slab-to-bulk convergence bound") {
    const Material m = Material::drude(3.0, 0.035);
    for (double omega : {0.8, 1.6, 2.4}) {
        const cplx eps = m.eps_real_axis(omega);
        for (double kmul : {0.3, 0.9, 1.4}) {
            const double k = kmul * omega / units::hbar_c;
            for (double t : {10.0, 50.0, 200.0}) {
                for (auto pol : {Polarization::te, Polarization::tm}) {
                    const cplx r0 = fresnel_interface(eps, omega, k, pol);
                    if (std::abs(r0) >= 0.999) continue;  // bound needs |r01| < 1
                    const cplx q1 = film_kz_real(eps, omega, k);
                    const double bound = std::exp(-2.0 * q1.imag() * t) * 2.0 /
                                         (1.0 - std::norm(r0));
                    const cplx rs = slab_reflection_real(eps, t, omega, k, pol);
                    CHECK(std::abs(rs - r0) <= bound + 1e-14);
                }
            }
        }
    }
}

TEST_CASE("slab formula is even in q1 (branch-flip invariance)") {
    auto slab_with_branch = [](cplx eps, double t, double omega, double k, Polarization pol,
                               bool flip) {
        const double w_c = omega / units::hbar_c;
        const cplx q0 = kz_vacuum_real(omega, k);
        cplx q1 = std::sqrt(eps * w_c * w_c - k * k);
        if (q1.imag() < 0.0) q1 = -q1;
        if (flip) q1 = -q1;
        const cplx r01 = pol == Polarization::te ? (q0 - q1) / (q0 + q1)
                                                 : (eps * q0 - q1) / (eps * q0 + q1);
        const cplx e = std::exp(cplx(0.0, 2.0 * t) * q1);
        return r01 * (1.0 - e) / (1.0 - r01 * r01 * e);
    };

    const Material m = Material::drude(3.0, 0.035);
    Lcg rng;
    for (int i = 0; i < 10; ++i) {
        const double omega = rng.next(0.5, 5.0);
        const double k = rng.next(0.0, 2.5) * omega / units::hbar_c;
        const double t = rng.next(1.0, 30.0);  // keeps |e^{-2i q1 t}| representable
        const cplx eps = m.eps_real_axis(omega);
        for (auto pol : {Polarization::te, Polarization::tm}) {
            const cplx a = slab_with_branch(eps, t, omega, k, pol, false);
            const cplx b = slab_with_branch(eps, t, omega, k, pol, true);
            CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
            const cplx lib = slab_reflection_real(eps, t, omega, k, pol);
            CHECK(std::abs(a - lib) <= 1e-12 * (1.0 + std::abs(a)));
        }
    }
}

TEST_SUITE_END();
