#pragma once

#include "casimir/layer_optics.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

// Two identical films separated by a vacuum gap d.
class CavityConfig {
 public:
    CavityConfig(SlabGeometry slab, double gap_nm)
        : slab_(std::move(slab)), gap_(gap_nm) {
        if (!(gap_ > 0.0))
            throw std::invalid_argument("CavityConfig: gap must be positive");
    }

    const SlabGeometry& slab() const { return slab_; }
    double gap() const { return gap_; }

 private:
    SlabGeometry slab_;
    double gap_;
};

struct PressureResult {
    double pressure_pa = 0.0;       // signed; negative = attractive
    double est_abs_error_pa = 0.0;
    long long evaluations = 0;
};

// Zero-temperature Lifshitz pressure,
//   P = -(hbar/2 pi^2) int_0^inf dxi int_0^inf k dk kappa0
//       sum_p r_p^2 e^{-2 kappa0 d} / (1 - r_p^2 e^{-2 kappa0 d}),
// evaluated as a nested adaptive integral over (xi, u = 2 kappa0 d) with the
// u > 60 truncation. Ground-truth oracle for the real-frequency module.
PressureResult total_pressure(const CavityConfig& cfg, const QuadratureSettings& quad = {});

}  // namespace casimir
