#include "casimir/fom_scan.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/parallel.hpp"

namespace casimir {

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

FomPoint fom(const CavityConfig& cfg, const QuadratureSettings& quad) {
    const PressureResult p = total_pressure(cfg, quad);
    FomPoint out;
    out.t_nm = cfg.slab().thickness();
    out.d_nm = cfg.gap();
    out.pressure_pa = p.pressure_pa;
    out.pressure_err_pa = p.est_abs_error_pa;
    out.fom_pa_per_nm = std::abs(p.pressure_pa) / out.t_nm;
    return out;
}

namespace {

double loglog_slope(const std::vector<double>& t, const std::vector<double>& f,
                    double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < lo || t[i] > hi || !(f[i] > 0.0)) continue;
        const double x = std::log(t[i]);
        const double y = std::log(f[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

FomScanResult sweep_fom_with(const Material& material, double d_nm,
                             const std::vector<double>& t_grid_nm,
                             const PressureFn& pressure) {
    if (t_grid_nm.size() < 8)
        throw std::invalid_argument("sweep_fom: need at least 8 thickness points");
    for (std::size_t i = 1; i < t_grid_nm.size(); ++i)
        if (!(t_grid_nm[i] > t_grid_nm[i - 1]))
            throw std::invalid_argument("sweep_fom: t grid must be strictly increasing");

    auto fom_at = [&](double t) {
        const CavityConfig cfg(SlabGeometry(t, material), d_nm);
        const PressureResult p = pressure(cfg);
        FomPoint out;
        out.t_nm = t;
        out.d_nm = d_nm;
        out.pressure_pa = p.pressure_pa;
        out.pressure_err_pa = p.est_abs_error_pa;
        out.fom_pa_per_nm = std::abs(p.pressure_pa) / t;
        return out;
    };

    FomScanResult result;
    result.points.resize(t_grid_nm.size());
    parallel_for(t_grid_nm.size(),
                 [&](std::size_t i) { result.points[i] = fom_at(t_grid_nm[i]); });

    std::vector<double> ts, fs;
    for (const auto& p : result.points) {
        ts.push_back(p.t_nm);
        fs.push_back(p.fom_pa_per_nm);
    }
    result.slope_thin = loglog_slope(ts, fs, ts.front(), 10.0 * ts.front());
    result.slope_thick = loglog_slope(ts, fs, ts.back() / 10.0, ts.back());

    // interior maximum: both neighbors lower by more than the error estimate
    std::size_t imax = 0;
    for (std::size_t i = 1; i < fs.size(); ++i)
        if (fs[i] > fs[imax]) imax = i;
    if (imax > 0 && imax + 1 < fs.size()) {
        const double err = (result.points[imax].pressure_err_pa +
                            result.points[imax].fom_pa_per_nm * 1e-9) /
                           ts[imax];
        if (fs[imax] > fs[imax - 1] + err && fs[imax] > fs[imax + 1] + err) {
            // golden section in log t to 1% relative
            const double gr = 0.61803398874989485;
            double a = std::log(ts[imax - 1]);
            double b = std::log(ts[imax + 1]);
            double x1 = b - gr * (b - a);
            double x2 = a + gr * (b - a);
            double f1 = fom_at(std::exp(x1)).fom_pa_per_nm;
            double f2 = fom_at(std::exp(x2)).fom_pa_per_nm;
            while (b - a > 0.01) {
                if (f1 < f2) {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + gr * (b - a);
                    f2 = fom_at(std::exp(x2)).fom_pa_per_nm;
                } else {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - gr * (b - a);
                    f1 = fom_at(std::exp(x1)).fom_pa_per_nm;
                }
            }
            result.t_opt_nm = std::exp(0.5 * (a + b));
        }
    }
    return result;
}

FomScanResult sweep_fom(const Material& material, double d_nm,
                        const std::vector<double>& t_grid_nm,
                        const QuadratureSettings& quad) {
    return sweep_fom_with(material, d_nm, t_grid_nm,
                          [&quad](const CavityConfig& cfg) { return total_pressure(cfg, quad); });
}

std::vector<OptimalThicknessPoint> optimal_thickness_curve(
    const Material& material, const std::vector<double>& d_list_nm,
    const std::vector<double>& t_grid_nm, const QuadratureSettings& quad) {
    if (d_list_nm.empty())
        throw std::invalid_argument("optimal_thickness_curve: empty separation list");

    std::vector<OptimalThicknessPoint> out(d_list_nm.size());
    for (std::size_t i = 0; i < d_list_nm.size(); ++i) {
        out[i].d_nm = d_list_nm[i];
        try {
            const FomScanResult r = sweep_fom(material, d_list_nm[i], t_grid_nm, quad);
            if (r.t_opt_nm) {
                out[i].t_opt_nm = r.t_opt_nm;
            } else {
                out[i].error = "no interior FOM maximum on the thickness grid";
            }
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    }
    return out;
}

namespace {

double asymptote_model(double t, double alpha) {
    const double x = alpha * t;
    if (x < 1e-8) return 1.0 - 0.5 * x;  // series limit of (1-e^-x)/x
    return (1.0 - std::exp(-x)) / x;
}

}  // namespace

AsymptoteFit fit_asymptote(const std::vector<double>& t_nm, const std::vector<double>& fom) {
    if (t_nm.size() != fom.size() || t_nm.size() < 4)
        throw std::invalid_argument("fit_asymptote: need >= 4 matched samples");
    for (double f : fom)
        if (!(f > 0.0)) throw convergence_error("fit_asymptote: nonpositive FOM sample");

    // relative least squares: residual_i = A g_i / f_i - 1; A optimal in
    // closed form per alpha, alpha by golden section on log alpha
    auto cost_and_amplitude = [&](double alpha) {
        double sg = 0.0, sgg = 0.0;
        std::vector<double> g(t_nm.size());
        for (std::size_t i = 0; i < t_nm.size(); ++i) {
            g[i] = asymptote_model(t_nm[i], alpha) / fom[i];
            sg += g[i];
            sgg += g[i] * g[i];
        }
        const double A = sg / sgg;
        double ss = 0.0;
        for (std::size_t i = 0; i < t_nm.size(); ++i) {
            const double r = A * g[i] - 1.0;
            ss += r * r;
        }
        return std::pair{ss, A};
    };

    const double gr = 0.61803398874989485;
    double a = std::log(1e-4), b = std::log(10.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = cost_and_amplitude(std::exp(x1)).first;
    double f2 = cost_and_amplitude(std::exp(x2)).first;
    for (int it = 0; it < 120 && b - a > 1e-6; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = cost_and_amplitude(std::exp(x1)).first;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = cost_and_amplitude(std::exp(x2)).first;
        }
    }
    AsymptoteFit fit;
    fit.alpha = std::exp(0.5 * (a + b));
    auto [ss, A] = cost_and_amplitude(fit.alpha);
    if (!std::isfinite(ss) || !std::isfinite(A) || !(A > 0.0))
        throw convergence_error("fit_asymptote: fit diverged");
    fit.amplitude = A;
    fit.rel_rms_residual = std::sqrt(ss / static_cast<double>(t_nm.size()));

    // log-log slope of the fitted curve over the top half-decade
    const double t_hi = t_nm.back();
    const double lo = t_hi / std::sqrt(10.0);
    std::vector<double> tt = log_grid(lo, t_hi, 16), mm(16);
    for (int i = 0; i < 16; ++i) mm[i] = A * asymptote_model(tt[i], fit.alpha);
    fit.slope_top_half_decade = loglog_slope(tt, mm, lo, t_hi);
    return fit;
}

AsymptoteFit asymptote_check(const Material& material, double d_nm, double t_lo_nm,
                             double t_hi_nm, int n_points, const QuadratureSettings& quad) {
    if (!(t_hi_nm > t_lo_nm) || n_points < 4)
        throw std::invalid_argument("asymptote_check: bad fit range");

    const std::vector<double> ts = log_grid(t_lo_nm, t_hi_nm, n_points);
    std::vector<double> fs(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        fs[i] = fom(CavityConfig(SlabGeometry(ts[i], material), d_nm), quad).fom_pa_per_nm;
    });
    return fit_asymptote(ts, fs);
}

}  // namespace casimir
