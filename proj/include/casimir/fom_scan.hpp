#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "casimir/lifshitz_imaginary.hpp"

namespace casimir {

// Averaged force density |P|/t: the figure of merit proportional to a
// freestanding film's Casimir-induced acceleration at uniform mass density.
struct FomPoint {
    double t_nm = 0.0;
    double d_nm = 0.0;
    double pressure_pa = 0.0;       // signed
    double pressure_err_pa = 0.0;
    double fom_pa_per_nm = 0.0;     // |pressure| / t
};

struct FomScanResult {
    std::vector<FomPoint> points;        // fixed d, increasing t
    std::optional<double> t_opt_nm;      // interior maximum, golden-section refined
    double slope_thin = 0.0;             // d(log FOM)/d(log t), lowest decade
    double slope_thick = 0.0;            // highest decade
};

using PressureFn = std::function<PressureResult(const CavityConfig&)>;

FomPoint fom(const CavityConfig& cfg, const QuadratureSettings& quad = {});

// FOM over a strictly increasing t grid (>= 8 points) at fixed separation.
// Grid points run in parallel; an interior maximum (neighbors lower by more
// than the pressure error estimate) is refined to 1% by golden section.
FomScanResult sweep_fom(const Material& material, double d_nm,
                        const std::vector<double>& t_grid_nm,
                        const QuadratureSettings& quad = {});

// Injectable-pressure variant used by unit tests.
FomScanResult sweep_fom_with(const Material& material, double d_nm,
                             const std::vector<double>& t_grid_nm,
                             const PressureFn& pressure);

struct OptimalThicknessPoint {
    double d_nm = 0.0;
    std::optional<double> t_opt_nm;
    std::string error;  // per-separation failure, e.g. no interior maximum
};

std::vector<OptimalThicknessPoint> optimal_thickness_curve(
    const Material& material, const std::vector<double>& d_list_nm,
    const std::vector<double>& t_grid_nm, const QuadratureSettings& quad = {});

struct AsymptoteFit {
    double alpha = 0.0;              // 1/nm
    double amplitude = 0.0;
    double rel_rms_residual = 0.0;
    double slope_top_half_decade = 0.0;  // log-log slope of the fitted curve
};

// Fits A (1 - e^{-alpha t}) / (alpha t) to (t, fom) samples in relative
// least squares; the slope is that of the fitted curve over the top
// half-decade of t.
AsymptoteFit fit_asymptote(const std::vector<double>& t_nm, const std::vector<double>& fom);

// Samples FOM(t) over [t_lo, t_hi] (thick sub-range; the t << 1/alpha
// region is excluded by construction) and fits the asymptote model.
AsymptoteFit asymptote_check(const Material& material, double d_nm, double t_lo_nm = 20.0,
                             double t_hi_nm = 500.0, int n_points = 12,
                             const QuadratureSettings& quad = {});

// log-spaced grid helper (used by CLI defaults and presets)
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace casimir
