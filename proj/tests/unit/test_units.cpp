#include <doctest.h>

#include <cmath>

#include "casimir/units.hpp"

using namespace casimir;

TEST_SUITE_BEGIN("units");

TEST_CASE("energy to vacuum wavenumber") {
    CHECK(units::energy_to_vacuum_wavenumber(0.0) == 0.0);
    CHECK(units::energy_to_vacuum_wavenumber(197.3269804) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(units::energy_to_vacuum_wavenumber(3.0) ==
          doctest::Approx(0.0152032).epsilon(1e-5));
    CHECK(units::energy_to_vacuum_wavenumber(3.0) == 3.0 / units::hbar_c);
    CHECK_THROWS_AS(units::energy_to_vacuum_wavenumber(-1.0), std::invalid_argument);
}

TEST_CASE("plasma wavelength") {
    CHECK(units::plasma_wavelength(3.0) == doctest::Approx(413.32).epsilon(1e-4));
    const double two_pi_hbarc = 2.0 * M_PI * units::hbar_c;
    CHECK(units::plasma_wavelength(two_pi_hbarc) == doctest::Approx(1.0).epsilon(1e-15));
    // ultrathin threshold lambda_p / 50
    CHECK(units::plasma_wavelength(3.0) / 50.0 == doctest::Approx(8.266).epsilon(1e-3));
    CHECK_THROWS_AS(units::plasma_wavelength(0.0), std::invalid_argument);
    CHECK_THROWS_AS(units::plasma_wavelength(-3.0), std::invalid_argument);
}

TEST_CASE("constant set consistency: hbar_c / hbar = c") {
    const double c_from_constants = units::hbar_c * 1e-9 / units::hbar;  // m/s
    CHECK(c_from_constants == doctest::Approx(units::c_light).epsilon(1e-9));
}

TEST_CASE("round-trip conversions stable to 1 ulp") {
    for (double e : {1e-6, 0.035, 1.0, 3.0, 15.0, 197.3269804, 1e4}) {
        const double rt1 =
            units::angular_frequency_to_energy(units::energy_to_angular_frequency(e));
        CHECK(std::abs(rt1 - e) <= std::abs(std::nextafter(e, 2 * e) - e));
        const double rt2 = units::energy_to_vacuum_wavenumber(e) * units::hbar_c;
        CHECK(std::abs(rt2 - e) <= std::abs(std::nextafter(e, 2 * e) - e));
    }
}

TEST_SUITE_END();
