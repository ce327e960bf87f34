#pragma once

#include <complex>
#include <string>
#include <vector>

#include "casimir/lifshitz_real.hpp"

namespace casimir {

enum class ModeLabel { enz, sr_spp, spp, unlabeled };

std::string to_string(ModeLabel label);

// A repulsive spectral peak paired with its adjacent attractive valley in
// the evanescent channel, with band edges at the enclosing zero crossings.
struct PeakValleyPair {
    double omega_peak = 0.0;    // eV, local max, p > 0
    double omega_valley = 0.0;  // eV, local min, p < 0
    double band_lo = 0.0;
    double band_hi = 0.0;
    ModeLabel label = ModeLabel::unlabeled;
};

struct ModeContribution {
    PeakValleyPair pair;
    double band_pressure_pa = 0.0;  // integral of evanescent p over the band
    double separation_nm = 0.0;
};

// Extrema of the evanescent channel above the prominence floor (relative to
// the global max |p|), paired peak-to-adjacent-valley and sorted by
// frequency. Throws convergence_error when nothing clears the floor.
std::vector<PeakValleyPair> detect_pairs(const ForceSpectrum& spec,
                                         double prominence_rel = 1e-3);

// ENZ / SR_SPP labels apply when t < lambda_p/50 (ultrathin conductor):
// the pair nearest the ENZ frequency gets ENZ, the closest remaining pair
// below it SR_SPP. Otherwise a single pair is the coupled-SPP resonance.
std::vector<PeakValleyPair> label_pairs(std::vector<PeakValleyPair> pairs,
                                        const Material& material, double thickness_nm);

ModeContribution band_contribution(const ForceSpectrum& spec, const PeakValleyPair& pair);

struct ModeTrackRow {
    double separation_nm;
    PeakValleyPair pair;
    double band_pressure_pa;
};

// force_spectrum + detect + label + band_contribution per separation; the
// dataset behind the mode-tracking figure.
std::vector<ModeTrackRow> track_modes(const SlabGeometry& slab,
                                      const std::vector<double>& d_list_nm,
                                      double omega_min, double omega_max,
                                      const GridPolicy& grid = {},
                                      const QuadratureSettings& quad = {});

// Complex TM mode frequencies of the isolated film at transverse momentum k:
// roots of tanh(kappa1 t/2) = -kappa1/(eps kappa0) and of
// tanh(kappa1 t/2) = -eps kappa0/kappa1 by damped Newton iteration seeded at
// the SPP and ENZ frequencies. Only bound roots (Re kappa0 > 0) are kept.
std::vector<std::complex<double>> slab_mode_dispersion(const SlabGeometry& slab,
                                                       double k_nm);

}  // namespace casimir
