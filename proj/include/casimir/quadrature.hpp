#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    long long max_evals = 5'000'000;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    long long evaluations = 0;
    bool converged = false;
};

// Shared evaluation budget for nested integrals. charge() throws once the
// cap is exhausted so a runaway inner integral cannot stall a sweep.
class EvalBudget {
 public:
    explicit EvalBudget(long long cap) : cap_(cap) {}

    void charge(long long n) {
        used_ += n;
        if (used_ > cap_)
            throw convergence_error("quadrature evaluation budget exhausted (" +
                                    std::to_string(cap_) + " integrand calls)");
    }
    long long used() const { return used_; }
    long long cap() const { return cap_; }

 private:
    long long cap_;
    long long used_ = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839998060075570,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double value;
    double error;
};

template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(mid - half * gk_nodes[i]);
        fv[14 - i] = f(mid + half * gk_nodes[i]);
    }
    fv[7] = f(mid);

    double kronrod = gk_weights[7] * fv[7];
    double gauss = gauss_weights[3] * fv[7];
    double resabs = gk_weights[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        kronrod += gk_weights[i] * (fv[i] + fv[14 - i]);
        resabs += gk_weights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1)
            gauss += gauss_weights[i / 2] * (fv[i] + fv[14 - i]);
    }

    const double mean = 0.5 * kronrod;
    double resasc = gk_weights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += gk_weights[i] *
                  (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    kronrod *= half;
    gauss *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    return {kronrod, err};
}

// Fixed-order tanh-sinh rule; interior nodes only, tolerant of integrable
// endpoint singularities. Used as the per-panel fallback.
template <class F>
PanelEstimate tanh_sinh(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double pi_2 = 1.57079632679489661923;
    const double umax = 3.4;
    const int n = 40;
    const double h = umax / n;

    auto level = [&](int stride, bool odd_only) {
        double s = 0.0;
        for (int i = odd_only ? 1 : 0; i <= n; i += stride) {
            const double u = i * h;
            const double sh = pi_2 * std::sinh(u);
            const double x = std::tanh(sh);
            const double w = pi_2 * std::cosh(u) / std::pow(std::cosh(sh), 2);
            if (1.0 - std::abs(x) < 1e-17) continue;
            if (i == 0) {
                s += w * f(mid);
            } else {
                s += w * (f(mid + half * x) + f(mid - half * x));
            }
        }
        return s;
    };

    const double coarse = 2.0 * h * level(2, false) * half;
    const double fine = h * (level(2, false) + level(2, true)) * half;
    return {fine, std::max(std::abs(fine - coarse), 4.0 * std::numeric_limits<double>::epsilon() * std::abs(fine))};
}

struct Interval {
    double a, b;
    double value, error;
    std::uint32_t depth;
    bool frozen;  // fallback applied, do not split again
};

}  // namespace detail

// Adaptive Gauss-Kronrod quadrature on [a, b] with largest-error-first
// subdivision and a tanh-sinh fallback on panels that stop improving.
// Deterministic for a given integrand and settings.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b,
                              const QuadratureSettings& s = {},
                              EvalBudget* budget = nullptr) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    constexpr std::uint32_t max_depth = 48;
    const std::size_t max_panels = 4096;

    auto tally = [&](long long n) {
        out.evaluations += n;
        if (budget) budget->charge(n);
    };

    std::vector<detail::Interval> panels;
    panels.reserve(256);
    {
        auto e = detail::gk15(f, a, b);
        tally(15);
        panels.push_back({a, b, e.value, e.error, 0, false});
    }

    auto totals = [&]() {
        double v = 0.0, err = 0.0;
        for (const auto& p : panels) {
            v += p.value;
            err += p.error;
        }
        return std::pair{v, err};
    };

    while (true) {
        auto [v, err] = totals();
        const double tol = std::max(s.abs_tol, s.rel_tol * std::abs(v));
        if (err <= tol) {
            out.value = v;
            out.abs_error = err;
            out.converged = true;
            return out;
        }

        // worst non-frozen panel; creation order breaks ties deterministically
        std::size_t worst = panels.size();
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].frozen) continue;
            if (worst == panels.size() || panels[i].error > panels[worst].error)
                worst = i;
        }
        if (worst == panels.size() || panels.size() >= max_panels) {
            out.value = v;
            out.abs_error = err;
            out.converged = false;
            return out;
        }

        detail::Interval p = panels[worst];
        const double width = p.b - p.a;
        if (p.depth >= max_depth || std::abs(width) < 1e-15 * (std::abs(p.a) + std::abs(p.b) + 1.0)) {
            // stopped improving: one tanh-sinh shot, then freeze
            auto e = detail::tanh_sinh(f, p.a, p.b);
            tally(81);
            panels[worst] = {p.a, p.b, e.value, std::min(e.error, p.error), p.depth, true};
            continue;
        }

        const double m = 0.5 * (p.a + p.b);
        auto e1 = detail::gk15(f, p.a, m);
        auto e2 = detail::gk15(f, m, p.b);
        tally(30);
        panels[worst] = {p.a, m, e1.value, e1.error, p.depth + 1, false};
        panels.push_back({m, p.b, e2.value, e2.error, p.depth + 1, false});
    }
}

// Integral over [a, inf) via x = a + scale*u/(1-u). The integrand must decay
// fast enough that the mapped integrand vanishes toward u -> 1.
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, double scale,
                                 const QuadratureSettings& s = {},
                                 EvalBudget* budget = nullptr) {
    auto mapped = [&f, a, scale](double u) {
        const double om = 1.0 - u;
        const double x = a + scale * u / om;
        const double jac = scale / (om * om);
        return f(x) * jac;
    };
    return integrate_adaptive(mapped, 0.0, 1.0, s, budget);
}

}  // namespace casimir
