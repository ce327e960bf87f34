#include "casimir/lifshitz_imaginary.hpp"

#include <algorithm>
#include <cmath>

namespace casimir {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUMax = 60.0;  // e^{-60} ~ 9e-27 of the peak

}  // namespace

PressureResult total_pressure(const CavityConfig& cfg, const QuadratureSettings& quad) {
    const double d = cfg.gap();
    const double t = cfg.slab().thickness();
    const Material& mat = cfg.slab().material();

    EvalBudget budget(quad.max_evals);
    QuadratureSettings inner_q;
    inner_q.rel_tol = 0.25 * quad.rel_tol;

    double inner_peak = 0.0;  // running peak, drives the 1e-14 truncation

    auto inner = [&](double xi) -> double {
        const double umin = 2.0 * d * xi / units::hbar_c;
        if (umin >= kUMax) return 0.0;
        const double eps = mat.eps_imag_axis(xi);

        auto f = [&](double u) {
            const double kap0 = u / (2.0 * d);
            const double k2 = kap0 * kap0 - (xi / units::hbar_c) * (xi / units::hbar_c);
            const double k = k2 > 0.0 ? std::sqrt(k2) : 0.0;
            const double eu = std::exp(-u);
            double s = 0.0;
            for (auto pol : {Polarization::te, Polarization::tm}) {
                const double r = slab_reflection_imag(eps, t, xi, k, pol);
                const double re = r * r * eu;
                s += re / (1.0 - re);
            }
            return kap0 * kap0 * s / (2.0 * d);
        };

        QuadratureSettings qs = inner_q;
        qs.abs_tol = 1e-14 * inner_peak;
        const QuadResult r = integrate_adaptive(f, umin, kUMax, qs, &budget);
        inner_peak = std::max(inner_peak, std::abs(r.value));
        return r.value;
    };

    // xi mapped to [0,1); the scale splits quadrature effort around the
    // material's transparency knee or the geometric cutoff, whichever is
    // smaller.
    const double scale =
        std::min(mat.characteristic_energy(), 30.0 * units::hbar_c / d);
    QuadratureSettings outer_q = quad;
    const QuadResult outer = integrate_to_infinity(inner, 0.0, scale, outer_q, &budget);

    const double to_pa = units::ev_per_nm3_to_pa / (2.0 * kPi * kPi);
    PressureResult out;
    out.pressure_pa = -to_pa * outer.value;
    out.est_abs_error_pa =
        to_pa * outer.abs_error + inner_q.rel_tol * std::abs(out.pressure_pa);
    out.evaluations = budget.used();
    if (!outer.converged) {
        const double tol =
            std::max(quad.abs_tol * to_pa, quad.rel_tol * std::abs(out.pressure_pa));
        if (out.est_abs_error_pa > 10.0 * std::max(tol, 1e-300))
            throw convergence_error("total_pressure: quadrature failed to reach tolerance (error " +
                                    std::to_string(out.est_abs_error_pa) + " Pa)");
    }
    return out;
}

}  // namespace casimir
