#include "casimir/mode_analysis.hpp"

#include <algorithm>
#include <cmath>

namespace casimir {

std::string to_string(ModeLabel label) {
    switch (label) {
        case ModeLabel::enz: return "ENZ";
        case ModeLabel::sr_spp: return "SR_SPP";
        case ModeLabel::spp: return "SPP";
        default: return "UNLABELED";
    }
}

namespace {

struct Extremum {
    std::size_t index;
    double omega;
    double value;
    bool is_peak;  // local max with p > 0
    double prominence;
};

// Textbook prominence: height above the highest of the two minima reached
// before a higher extremum (or the series edge) on either side.
double prominence_at(const std::vector<double>& y, std::size_t i) {
    double left_min = y[i];
    for (std::size_t j = i; j-- > 0;) {
        left_min = std::min(left_min, y[j]);
        if (y[j] > y[i]) break;
    }
    double right_min = y[i];
    for (std::size_t j = i + 1; j < y.size(); ++j) {
        right_min = std::min(right_min, y[j]);
        if (y[j] > y[i]) break;
    }
    return y[i] - std::max(left_min, right_min);
}

std::vector<Extremum> find_extrema(const std::vector<double>& w, const std::vector<double>& y,
                                   double floor_abs) {
    std::vector<double> neg(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) neg[i] = -y[i];

    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (y[i] > y[i - 1] && y[i] > y[i + 1] && y[i] > 0.0) {
            const double prom = prominence_at(y, i);
            if (prom >= floor_abs) out.push_back({i, w[i], y[i], true, prom});
        } else if (y[i] < y[i - 1] && y[i] < y[i + 1] && y[i] < 0.0) {
            const double prom = prominence_at(neg, i);
            if (prom >= floor_abs) out.push_back({i, w[i], y[i], false, prom});
        }
    }
    return out;
}

// zero crossing of y nearest below/above index i, linearly interpolated
double crossing_below(const std::vector<double>& w, const std::vector<double>& y,
                      std::size_t i) {
    for (std::size_t j = i; j-- > 0;) {
        if (y[j] == 0.0) return w[j];
        if (y[j] * y[j + 1] < 0.0)
            return w[j] + (w[j + 1] - w[j]) * y[j] / (y[j] - y[j + 1]);
    }
    return w.front();
}

double crossing_above(const std::vector<double>& w, const std::vector<double>& y,
                      std::size_t i) {
    for (std::size_t j = i; j + 1 < y.size(); ++j) {
        if (y[j + 1] == 0.0) return w[j + 1];
        if (y[j] * y[j + 1] < 0.0)
            return w[j] + (w[j + 1] - w[j]) * y[j] / (y[j] - y[j + 1]);
    }
    return w.back();
}

}  // namespace

std::vector<PeakValleyPair> detect_pairs(const ForceSpectrum& spec, double prominence_rel) {
    const auto& w = spec.omega();
    std::vector<double> y(w.size());
    double ymax = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        y[i] = spec.p_evanescent(i);
        ymax = std::max(ymax, std::abs(y[i]));
    }
    if (ymax == 0.0)
        throw convergence_error("detect_pairs: spectrum is identically zero");

    auto ext = find_extrema(w, y, prominence_rel * ymax);
    if (ext.empty())
        throw convergence_error("detect_pairs: no extrema above prominence floor");

    // Pair each peak (largest first) with the nearest unclaimed valley that
    // is adjacent in the extrema sequence; ties prefer the lower-frequency
    // valley (the binding branch sits below the anti-binding one).
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < ext.size(); ++i)
        if (ext[i].is_peak) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ext[a].value > ext[b].value; });

    std::vector<bool> claimed(ext.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // (valley, peak) ext indices
    for (std::size_t pi : order) {
        long best = -1;
        if (pi > 0 && !ext[pi - 1].is_peak && !claimed[pi - 1]) best = static_cast<long>(pi - 1);
        else if (pi + 1 < ext.size() && !ext[pi + 1].is_peak && !claimed[pi + 1])
            best = static_cast<long>(pi + 1);
        if (best < 0) continue;
        claimed[pi] = true;
        claimed[static_cast<std::size_t>(best)] = true;
        matched.emplace_back(static_cast<std::size_t>(best), pi);
    }
    if (matched.empty())
        throw convergence_error("detect_pairs: no peak/valley pair found");

    std::vector<PeakValleyPair> pairs;
    for (auto [vi, pi] : matched) {
        PeakValleyPair p;
        p.omega_peak = ext[pi].omega;
        p.omega_valley = ext[vi].omega;
        const std::size_t lo = std::min(ext[vi].index, ext[pi].index);
        const std::size_t hi = std::max(ext[vi].index, ext[pi].index);
        p.band_lo = crossing_below(w, y, lo);
        p.band_hi = crossing_above(w, y, hi);
        pairs.push_back(p);
    }
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::min(a.omega_valley, a.omega_peak) < std::min(b.omega_valley, b.omega_peak);
    });

    // pairs without a zero crossing between them share an edge at the
    // minimum-|p| point between their extrema
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
        if (pairs[i].band_hi > pairs[i + 1].band_lo) {
            const double a = std::max(pairs[i].omega_peak, pairs[i].omega_valley);
            const double b = std::min(pairs[i + 1].omega_peak, pairs[i + 1].omega_valley);
            double best_w = 0.5 * (a + b), best_y = 1e300;
            for (std::size_t j = 0; j < w.size(); ++j) {
                if (w[j] <= a || w[j] >= b) continue;
                if (std::abs(y[j]) < best_y) {
                    best_y = std::abs(y[j]);
                    best_w = w[j];
                }
            }
            pairs[i].band_hi = best_w;
            pairs[i + 1].band_lo = best_w;
        }
    }
    return pairs;
}

std::vector<PeakValleyPair> label_pairs(std::vector<PeakValleyPair> pairs,
                                        const Material& material, double thickness_nm) {
    for (auto& p : pairs) p.label = ModeLabel::unlabeled;

    const auto wp = material.plasma_energy();
    double enz = 0.0;
    bool have_enz = false;
    if (wp) {
        try {
            enz = find_enz_frequency(material);
            have_enz = true;
        } catch (const std::invalid_argument&) {
            have_enz = false;
        }
    }

    if (wp && have_enz && thickness_nm < units::plasma_wavelength(*wp) / 50.0) {
        // ultrathin conductor: nearest-to-ENZ pair is the ENZ resonance
        std::size_t enz_i = pairs.size();
        double best = 1e300;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const double dist = std::abs(pairs[i].omega_peak - enz);
            if (dist < best) {
                best = dist;
                enz_i = i;
            }
        }
        if (enz_i < pairs.size()) {
            pairs[enz_i].label = ModeLabel::enz;
            // highest remaining pair below the ENZ pair is the short-ranged SPP
            std::size_t sr_i = pairs.size();
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (i == enz_i) continue;
                if (pairs[i].omega_peak < pairs[enz_i].omega_peak &&
                    (sr_i == pairs.size() || pairs[i].omega_peak > pairs[sr_i].omega_peak))
                    sr_i = i;
            }
            if (sr_i < pairs.size()) pairs[sr_i].label = ModeLabel::sr_spp;
        }
    } else if (pairs.size() == 1) {
        pairs[0].label = ModeLabel::spp;
    }
    return pairs;
}

ModeContribution band_contribution(const ForceSpectrum& spec, const PeakValleyPair& pair) {
    const auto& w = spec.omega();
    if (pair.band_lo < w.front() - 1e-12 || pair.band_hi > w.back() + 1e-12)
        throw std::invalid_argument("band_contribution: band extends past the sampled range");
    if (!(pair.band_hi > pair.band_lo))
        throw std::invalid_argument("band_contribution: empty band");

    auto value_at = [&](double om) {
        const auto it = std::lower_bound(w.begin(), w.end(), om);
        if (it == w.begin()) return spec.p_evanescent(0);
        if (it == w.end()) return spec.p_evanescent(w.size() - 1);
        const std::size_t j = static_cast<std::size_t>(it - w.begin());
        const double f = (om - w[j - 1]) / (w[j] - w[j - 1]);
        return spec.p_evanescent(j - 1) * (1.0 - f) + spec.p_evanescent(j) * f;
    };

    double sum = 0.0;
    double prev_w = pair.band_lo;
    double prev_y = value_at(pair.band_lo);
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= pair.band_lo || w[i] >= pair.band_hi) continue;
        sum += 0.5 * (prev_y + spec.p_evanescent(i)) * (w[i] - prev_w);
        prev_w = w[i];
        prev_y = spec.p_evanescent(i);
    }
    sum += 0.5 * (prev_y + value_at(pair.band_hi)) * (pair.band_hi - prev_w);

    ModeContribution out;
    out.pair = pair;
    out.band_pressure_pa = sum;
    out.separation_nm = spec.config().gap();
    return out;
}

std::vector<ModeTrackRow> track_modes(const SlabGeometry& slab,
                                      const std::vector<double>& d_list_nm,
                                      double omega_min, double omega_max,
                                      const GridPolicy& grid,
                                      const QuadratureSettings& quad) {
    if (d_list_nm.empty())
        throw std::invalid_argument("track_modes: empty separation list");

    std::vector<ModeTrackRow> rows;
    for (double d : d_list_nm) {
        const CavityConfig cfg(slab, d);
        const ForceSpectrum spec = force_spectrum(cfg, omega_min, omega_max, grid, quad);
        auto pairs = label_pairs(detect_pairs(spec, grid.prominence_rel),
                                 slab.material(), slab.thickness());
        for (const auto& p : pairs) {
            const ModeContribution c = band_contribution(spec, p);
            rows.push_back({d, p, c.band_pressure_pa});
        }
    }
    return rows;
}

// ------------------------------------------------------------- dispersion

namespace {

using cplx = std::complex<double>;

// branch functions of the isolated-film TM dispersion
cplx branch_fn(const Material& m, double t, double k, cplx omega, bool symmetric) {
    const cplx eps = [&] {
        // analytic continuation of the analytic models to complex omega
        if (auto* d = std::get_if<DrudeModel>(&m.model())) {
            const cplx iu(0.0, 1.0);
            return 1.0 - d->omega_p * d->omega_p / (omega * omega + iu * d->gamma_p * omega);
        }
        if (auto* l = std::get_if<LorentzModel>(&m.model())) {
            const cplx iu(0.0, 1.0);
            return 1.0 + l->c_l * l->omega_l * l->omega_l /
                             (l->omega_l * l->omega_l - omega * omega - iu * l->gamma_l * omega);
        }
        throw std::invalid_argument(
            "slab_mode_dispersion: analytic (Drude/Lorentz) material required");
    }();
    const cplx w_c = omega / units::hbar_c;
    cplx kap0 = std::sqrt(k * k - w_c * w_c);
    if (kap0.real() < 0.0) kap0 = -kap0;
    cplx kap1 = std::sqrt(k * k - eps * w_c * w_c);
    if (kap1.real() < 0.0) kap1 = -kap1;
    const cplx th = std::tanh(kap1 * t / 2.0);
    return symmetric ? th + kap1 / (eps * kap0) : th + eps * kap0 / kap1;
}

bool newton_root(const Material& m, double t, double k, bool symmetric, cplx seed,
                 cplx& root) {
    cplx w = seed;
    for (int it = 0; it < 50; ++it) {
        const cplx f = branch_fn(m, t, k, w, symmetric);
        const double h = 1e-7 * (1.0 + std::abs(w));
        const cplx fp = (branch_fn(m, t, k, w + h, symmetric) -
                         branch_fn(m, t, k, w - h, symmetric)) /
                        (2.0 * h);
        if (std::abs(fp) == 0.0) return false;
        cplx step = f / fp;
        // damping: halve until |f| decreases
        double fmag = std::abs(f);
        cplx w_new = w - step;
        for (int damp = 0; damp < 8; ++damp) {
            if (w_new.real() > 0.0 &&
                std::abs(branch_fn(m, t, k, w_new, symmetric)) < fmag)
                break;
            step *= 0.5;
            w_new = w - step;
        }
        const double dw = std::abs(w_new - w);
        w = w_new;
        if (dw < 1e-8) {
            root = w;
            return w.real() > 0.0;
        }
    }
    return false;
}

}  // namespace

std::vector<std::complex<double>> slab_mode_dispersion(const SlabGeometry& slab, double k_nm) {
    if (!(k_nm > 0.0))
        throw std::invalid_argument("slab_mode_dispersion: k must be positive");
    const Material& m = slab.material().model().index() < 2
                            ? slab.material()
                            : throw std::invalid_argument(
                                  "slab_mode_dispersion: analytic material required");
    const double t = slab.thickness();

    std::vector<cplx> seeds;
    try {
        const double enz = find_enz_frequency(m);
        seeds.emplace_back(enz, -0.02);
        seeds.emplace_back(0.97 * enz, -0.02);
    } catch (const std::invalid_argument&) {
    }
    try {
        const double spp = find_spp_frequency(m);
        seeds.emplace_back(spp, -0.02);
        seeds.emplace_back(0.6 * spp, -0.02);
    } catch (const std::invalid_argument&) {
    }
    if (seeds.empty())
        throw std::invalid_argument("slab_mode_dispersion: no SPP/ENZ seed frequencies");

    std::vector<cplx> roots;
    for (bool symmetric : {true, false}) {
        for (const cplx& seed : seeds) {
            cplx root;
            if (!newton_root(m, t, k_nm, symmetric, seed, root)) continue;
            // bound modes only: below the light line, fields decay into vacuum
            if (root.real() >= k_nm * units::hbar_c) continue;
            if (std::abs(root.imag()) > 0.5 * root.real()) continue;
            bool dup = false;
            for (const cplx& r : roots)
                if (std::abs(r - root) < 1e-6 * (1.0 + std::abs(root))) dup = true;
            if (!dup) roots.push_back(root);
        }
    }
    if (roots.empty())
        throw convergence_error("slab_mode_dispersion: no bound root converged at k = " +
                                std::to_string(k_nm) + " 1/nm");
    std::sort(roots.begin(), roots.end(),
              [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
    return roots;
}

}  // namespace casimir
