#include <doctest.h>

#include <cmath>

#include "casimir/lifshitz_imaginary.hpp"

using namespace casimir;

namespace {

QuadratureSettings fast() {
    QuadratureSettings q;
    q.rel_tol = 1e-7;
    return q;
}

double ideal_metal_pa(double d_nm) {
    return -M_PI * M_PI * units::hbar_c / (240.0 * std::pow(d_nm, 4)) *
           units::ev_per_nm3_to_pa;
}

}  // namespace

TEST_SUITE_BEGIN("lifshitz_imaginary");

TEST_CASE("near-ideal metal approaches the perfect-mirror law") {
    const Material metal = Material::drude(100.0, 1e-4);
    const SlabGeometry slab(1000.0, metal);

    const PressureResult p1 = total_pressure(CavityConfig(slab, 1000.0), fast());
    const double ref1 = ideal_metal_pa(1000.0);
    CHECK(ref1 == doctest::Approx(-1.300e-3).epsilon(1e-3));
    CHECK(p1.pressure_pa == doctest::Approx(ref1).epsilon(0.02));

    // At d = 100 nm the finite plasma energy costs ~(16/3)(hbar c/omega_p)/d
    // ~ 10%, so the perfect-mirror law holds only to that accuracy there.
    const PressureResult p2 = total_pressure(CavityConfig(slab, 100.0), fast());
    CHECK(p2.pressure_pa == doctest::Approx(ideal_metal_pa(100.0)).epsilon(0.10));
    CHECK(p2.pressure_pa == doctest::Approx(-11.746).epsilon(0.005));
}

TEST_CASE("reference Drude pressures") {
    const Material m = Material::drude(3.0, 0.035);
    auto P = [&](double t, double d) {
        return total_pressure(CavityConfig(SlabGeometry(t, m), d), fast()).pressure_pa;
    };
    // frozen from an independent nested-quadrature evaluation of the same integral
    CHECK(P(200.0, 10.0) == doctest::Approx(-3640.70).epsilon(0.003));
    CHECK(P(2.0, 10.0) == doctest::Approx(-1916.19).epsilon(0.003));
    CHECK(P(200.0, 100.0) == doctest::Approx(-2.715825).epsilon(0.003));
    CHECK(P(2.0, 100.0) == doctest::Approx(-0.5716453).epsilon(0.003));
}

TEST_CASE("vacuum film exerts no pressure") {
    const PressureResult p =
        total_pressure(CavityConfig(SlabGeometry(10.0, Material::vacuum()), 10.0), fast());
    CHECK(p.pressure_pa == 0.0);
}

TEST_CASE("|P| grows with film thickness") {
    const Material m = Material::drude(3.0, 0.035);
    double prev = 0.0;
    for (double t : {2.0, 5.0, 20.0, 200.0}) {
        const double mag =
            std::abs(total_pressure(CavityConfig(SlabGeometry(t, m), 10.0), fast()).pressure_pa);
        CHECK(mag > prev);
        prev = mag;
    }
}

TEST_CASE("attraction, decay with separation, conductor dominance") {
    const Material drude = Material::drude(3.0, 0.035);
    const Material lorentz = Material::lorentz(1.0, 15.0, 0.01);

    for (double t : {1.0, 10.0, 100.0}) {
        double prev_d = 0.0, prev_l = 0.0;
        for (double d : {10.0, 100.0, 1000.0}) {
            const double pd =
                total_pressure(CavityConfig(SlabGeometry(t, drude), d), fast()).pressure_pa;
            const double pl =
                total_pressure(CavityConfig(SlabGeometry(t, lorentz), d), fast()).pressure_pa;
            CHECK(pd < 0.0);
            CHECK(pl < 0.0);
            CHECK(std::abs(pd) > std::abs(pl));
            if (prev_d != 0.0) {
                CHECK(std::abs(pd) < prev_d);
                CHECK(std::abs(pl) < prev_l);
            }
            prev_d = std::abs(pd);
            prev_l = std::abs(pl);
        }
    }
}

TEST_CASE("quadrature self-consistency") {
    const Material m = Material::drude(3.0, 0.035);
    const CavityConfig cfg(SlabGeometry(20.0, m), 50.0);
    QuadratureSettings a, b;
    a.rel_tol = 2e-7;
    b.rel_tol = 1e-7;
    const PressureResult pa = total_pressure(cfg, a);
    const PressureResult pb = total_pressure(cfg, b);
    CHECK(std::abs(pa.pressure_pa - pb.pressure_pa) <= pa.est_abs_error_pa);
    CHECK(pa.evaluations > 0);
    CHECK(pa.est_abs_error_pa >= 0.0);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(CavityConfig(SlabGeometry(10.0, Material::vacuum()), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(SlabGeometry(-1.0, Material::vacuum()), std::invalid_argument);
}

TEST_SUITE_END();
