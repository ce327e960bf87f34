#include "casimir/lifshitz_real.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "casimir/parallel.hpp"

namespace casimir {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kKappaDMax = 30.0;  // evanescent truncation: 2 kappa d > 60

// Kahan-Neumaier compensated accumulator for the phase-node panel sums.
struct Cascade {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

}  // namespace

SpectralDensity spectral_density(const CavityConfig& cfg, double omega_ev,
                                 const QuadratureSettings& quad) {
    if (!(omega_ev > 0.0))
        throw std::invalid_argument("spectral_density: omega must be positive");

    const double d = cfg.gap();
    const double t = cfg.slab().thickness();
    const std::complex<double> eps = cfg.slab().material().eps_real_axis(omega_ev);
    const double w_c = omega_ev / units::hbar_c;

    EvalBudget budget(quad.max_evals);
    SpectralDensity out;

    auto cavity_term = [&](std::complex<double> r, std::complex<double> phase) {
        const std::complex<double> re = r * r * phase;
        return re / (1.0 - re);
    };

    // propagating sector: variable x = q0 in [0, w/c], k = sqrt((w/c)^2-x^2);
    // panels split at the phase nodes x d = m pi/2
    auto prop_channel = [&](Polarization pol) {
        auto f = [&](double x) {
            const double k2 = (w_c - x) * (w_c + x);
            const double k = k2 > 0.0 ? std::sqrt(k2) : 0.0;
            const std::complex<double> r = slab_reflection_real(eps, t, omega_ev, k, pol);
            const std::complex<double> phase =
                std::exp(std::complex<double>(0.0, 2.0 * x * d));
            return x * x * cavity_term(r, phase).real();
        };
        Cascade acc;
        double err = 0.0;
        const double node = kPi / (2.0 * d);
        double a = 0.0;
        int m = 1;
        while (a < w_c) {
            const double b = std::min(m * node, w_c);
            const QuadResult r = integrate_adaptive(f, a, b, quad, &budget);
            acc.add(r.value);
            err += r.abs_error;
            a = b;
            ++m;
        }
        (void)err;
        return acc.total();
    };

    // evanescent sector: variable kappa in (0, 30/d]; seeded with geometric
    // panels so the adaptive heap resolves surface-mode resonances quickly
    auto evan_channel = [&](Polarization pol) {
        auto f = [&](double kap) {
            const double k = std::hypot(w_c, kap);
            const std::complex<double> r = slab_reflection_real(eps, t, omega_ev, k, pol);
            const double e = std::exp(-2.0 * kap * d);
            return -kap * kap * cavity_term(r, e).imag();
        };
        const double kmax = kKappaDMax / d;
        Cascade acc;
        double a = 0.0;
        for (double b : {0.5 / d, 1.0 / d, 2.0 / d, 4.0 / d, 8.0 / d, 16.0 / d, kmax}) {
            if (b > kmax) b = kmax;
            if (b <= a) continue;
            const QuadResult r = integrate_adaptive(f, a, b, quad, &budget);
            acc.add(r.value);
            a = b;
        }
        return acc.total();
    };

    const double pref = units::ev_per_nm3_to_pa / (2.0 * kPi * kPi);
    out.propagating_te = pref * prop_channel(Polarization::te);
    out.propagating_tm = pref * prop_channel(Polarization::tm);
    out.evanescent_te = pref * evan_channel(Polarization::te);
    out.evanescent_tm = pref * evan_channel(Polarization::tm);
    out.evaluations = budget.used();
    return out;
}

ForceSpectrum::ForceSpectrum(CavityConfig cfg, std::vector<double> omega,
                             std::vector<SpectralDensity> values)
    : cfg_(std::move(cfg)), omega_(std::move(omega)), v_(std::move(values)) {
    if (omega_.size() != v_.size())
        throw std::invalid_argument("ForceSpectrum: grid/value size mismatch");
    for (std::size_t i = 1; i < omega_.size(); ++i)
        if (!(omega_[i] > omega_[i - 1]))
            throw std::invalid_argument("ForceSpectrum: grid not strictly increasing");
}

namespace {

// indices of local extrema of y above the prominence floor
std::vector<std::size_t> extrema_indices(const std::vector<double>& w,
                                         const std::vector<double>& y,
                                         double prominence_rel) {
    std::vector<std::size_t> out;
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, std::abs(v));
    const double floor = prominence_rel * ymax;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const bool is_max = y[i] > y[i - 1] && y[i] > y[i + 1];
        const bool is_min = y[i] < y[i - 1] && y[i] < y[i + 1];
        if (!is_max && !is_min) continue;
        if (std::abs(y[i]) < floor) continue;
        out.push_back(i);
    }
    return out;
}

}  // namespace

ForceSpectrum force_spectrum(const CavityConfig& cfg, double omega_min, double omega_max,
                             const GridPolicy& grid, const QuadratureSettings& quad) {
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
        throw std::invalid_argument("force_spectrum: need 0 < omega_min < omega_max");
    if (grid.points < 8)
        throw std::invalid_argument("force_spectrum: need at least 8 grid points");

    // ordered map keeps the grid sorted across refinement rounds
    std::map<double, SpectralDensity> samples;
    std::vector<double> pending;
    pending.reserve(grid.points);
    for (int i = 0; i < grid.points; ++i)
        pending.push_back(omega_min + (omega_max - omega_min) * i / (grid.points - 1.0));

    auto evaluate_pending = [&]() {
        std::vector<SpectralDensity> results(pending.size());
        parallel_for(pending.size(), [&](std::size_t i) {
            results[i] = spectral_density(cfg, pending[i], quad);
        });
        for (std::size_t i = 0; i < pending.size(); ++i) samples[pending[i]] = results[i];
        pending.clear();
    };
    evaluate_pending();

    // refine around extrema of the evanescent and total channels until the
    // positions are stable to peak_rel_tol
    std::vector<double> prev_positions;
    for (int round = 0; round < grid.max_refine_rounds; ++round) {
        std::vector<double> w;
        std::vector<double> yev, ytot;
        w.reserve(samples.size());
        for (const auto& [om, sd] : samples) {
            w.push_back(om);
            yev.push_back(sd.evanescent());
            ytot.push_back(sd.total());
        }

        std::vector<std::size_t> idx = extrema_indices(w, yev, grid.prominence_rel);
        {
            auto it = extrema_indices(w, ytot, grid.prominence_rel);
            idx.insert(idx.end(), it.begin(), it.end());
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        }
        if (idx.empty()) break;

        std::vector<double> positions;
        for (std::size_t i : idx) positions.push_back(w[i]);

        bool stable = positions.size() == prev_positions.size();
        if (stable) {
            for (std::size_t i = 0; i < positions.size(); ++i) {
                // match by nearest previous position
                double best = 1e300;
                for (double p : prev_positions) best = std::min(best, std::abs(positions[i] - p));
                if (best > grid.peak_rel_tol * positions[i]) {
                    stable = false;
                    break;
                }
            }
        }
        if (stable) break;
        prev_positions = positions;

        for (std::size_t i : idx) {
            if (i > 0) pending.push_back(0.5 * (w[i - 1] + w[i]));
            if (i + 1 < w.size()) pending.push_back(0.5 * (w[i] + w[i + 1]));
        }
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
        std::erase_if(pending, [&](double om) { return samples.count(om) != 0; });
        if (pending.empty()) break;
        evaluate_pending();
    }

    // Second refinement pass: resolve the curve itself. Sharp, nearly
    // cancelling resonance lobes (weakly coupled surface modes at large d)
    // otherwise bias the trapezoid integral. The local indicator is the
    // deviation of each sample from the line through its neighbors.
    for (int round = 0; round < 24; ++round) {
        if (static_cast<int>(samples.size()) >= grid.max_points) break;
        std::vector<double> w;
        std::vector<double> ytot;
        w.reserve(samples.size());
        for (const auto& [om, sd] : samples) {
            w.push_back(om);
            ytot.push_back(sd.total());
        }
        double abs_integral = 0.0;
        for (std::size_t i = 1; i < w.size(); ++i)
            abs_integral +=
                0.5 * (std::abs(ytot[i]) + std::abs(ytot[i - 1])) * (w[i] - w[i - 1]);
        const double tol_total = grid.integral_rel_tol * abs_integral;

        double err_total = 0.0;
        std::vector<double> err(w.size(), 0.0);
        for (std::size_t i = 1; i + 1 < w.size(); ++i) {
            const double span = w[i + 1] - w[i - 1];
            const double lin = ytot[i - 1] +
                               (ytot[i + 1] - ytot[i - 1]) * (w[i] - w[i - 1]) / span;
            err[i] = std::abs(ytot[i] - lin) * span * 0.25;
            err_total += err[i];
        }
        if (err_total <= tol_total) break;

        const double node_tol = tol_total / 64.0;
        for (std::size_t i = 1; i + 1 < w.size(); ++i) {
            if (err[i] <= node_tol) continue;
            pending.push_back(0.5 * (w[i - 1] + w[i]));
            pending.push_back(0.5 * (w[i] + w[i + 1]));
        }
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
        std::erase_if(pending, [&](double om) { return samples.count(om) != 0; });
        if (pending.empty()) break;
        if (static_cast<int>(samples.size() + pending.size()) > grid.max_points)
            pending.resize(grid.max_points - samples.size());
        evaluate_pending();
    }

    std::vector<double> w;
    std::vector<SpectralDensity> v;
    w.reserve(samples.size());
    v.reserve(samples.size());
    for (auto& [om, sd] : samples) {
        w.push_back(om);
        v.push_back(sd);
    }
    return ForceSpectrum(cfg, std::move(w), std::move(v));
}

SpectrumIntegral integrate_spectrum_detailed(const ForceSpectrum& spec) {
    const auto& w = spec.omega();
    if (w.size() < 2)
        throw std::invalid_argument("integrate_spectrum: need at least 2 samples");

    SpectrumIntegral out;
    for (std::size_t i = 1; i < w.size(); ++i)
        out.pressure_pa +=
            0.5 * (spec.p_total(i) + spec.p_total(i - 1)) * (w[i] - w[i - 1]);

    // Tail bound: envelope near the top of the band times the smaller of the
    // propagating half-period pi c/(2d) and half the sampled band. Beyond the
    // band the envelope decays and lobes alternate, so one half-lobe bounds
    // the remainder.
    const double band = w.back() - w.front();
    const double top = w.back() - std::max(0.05 * band, w.back() * 0.02);
    double envelope = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] >= top) envelope = std::max(envelope, std::abs(spec.p_total(i)));
    const double half_period = kPi * units::hbar_c / (2.0 * spec.config().gap());
    out.tail_bound_pa = envelope * std::min(half_period, 0.5 * band);
    return out;
}

double integrate_spectrum(const ForceSpectrum& spec) {
    const SpectrumIntegral r = integrate_spectrum_detailed(spec);
    if (r.tail_bound_pa > 0.05 * std::abs(r.pressure_pa))
        throw convergence_error(
            "integrate_spectrum: high-frequency tail bound (" +
            std::to_string(r.tail_bound_pa) + " Pa) exceeds 5% of the integral (" +
            std::to_string(r.pressure_pa) + " Pa); widen the frequency band");
    return r.pressure_pa;
}

}  // namespace casimir
