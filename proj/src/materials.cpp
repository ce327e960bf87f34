#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_drude(const DrudeModel& m) {
    if (!(m.omega_p > 0.0) || !(m.gamma_p > 0.0))
        throw std::invalid_argument("DrudeModel: omega_p and gamma_p must be positive");
}

void validate_lorentz(const LorentzModel& m) {
    if (!(m.c_l > 0.0) || !(m.omega_l > 0.0) || !(m.gamma_l > 0.0))
        throw std::invalid_argument("LorentzModel: c_l, omega_l, gamma_l must be positive");
}

}  // namespace

// ---------------------------------------------------------------- tabulated

TabulatedMaterial::TabulatedMaterial(std::vector<double> grid_ev,
                                     std::vector<double> n_values,
                                     std::vector<double> k_values,
                                     LowFreqExtrapolation low, PowerLawDecay high)
    : grid_(std::move(grid_ev)),
      n_(std::move(n_values)),
      k_(std::move(k_values)),
      low_(low),
      high_(high) {
    if (grid_.size() < 8)
        throw std::invalid_argument("TabulatedMaterial: fewer than 8 grid rows");
    if (n_.size() != grid_.size() || k_.size() != grid_.size())
        throw std::invalid_argument("TabulatedMaterial: column lengths differ");
    if (!(grid_.front() > 0.0))
        throw std::invalid_argument("TabulatedMaterial: energies must be positive");
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        if (i > 0 && !(grid_[i] > grid_[i - 1]))
            throw std::invalid_argument("TabulatedMaterial: grid not strictly increasing at row " +
                                        std::to_string(i + 1));
        if (k_[i] < 0.0)
            throw std::invalid_argument("TabulatedMaterial: negative k at row " +
                                        std::to_string(i + 1));
        if (n_[i] < 0.0)
            throw std::invalid_argument("TabulatedMaterial: negative n at row " +
                                        std::to_string(i + 1));
    }
    if (auto* t = std::get_if<DrudeTail>(&low_)) {
        if (!(t->omega_p > 0.0) || !(t->gamma_p > 0.0))
            throw std::invalid_argument("DrudeTail: omega_p and gamma_p must be positive");
    }
    if (!(high_.exponent > 0.5))
        throw std::invalid_argument(
            "PowerLawDecay: exponent must exceed 0.5 for a convergent Kramers-Kronig tail");
    log_grid_.resize(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) log_grid_[i] = std::log(grid_[i]);
}

double TabulatedMaterial::interp_log(const std::vector<double>& y, double omega_ev) const {
    const double u = std::log(omega_ev);
    auto it = std::upper_bound(log_grid_.begin(), log_grid_.end(), u);
    if (it == log_grid_.begin()) return y.front();
    if (it == log_grid_.end()) return y.back();
    const std::size_t j = static_cast<std::size_t>(it - log_grid_.begin());
    const double w = (u - log_grid_[j - 1]) / (log_grid_[j] - log_grid_[j - 1]);
    return y[j - 1] * (1.0 - w) + y[j] * w;
}

double TabulatedMaterial::im_eps_at_log(double u) const {
    auto it = std::upper_bound(log_grid_.begin(), log_grid_.end(), u);
    if (it == log_grid_.begin()) return 2.0 * n_.front() * k_.front();
    if (it == log_grid_.end()) return 2.0 * n_.back() * k_.back();
    const std::size_t j = static_cast<std::size_t>(it - log_grid_.begin());
    const double w = (u - log_grid_[j - 1]) / (log_grid_[j] - log_grid_[j - 1]);
    const double n = n_[j - 1] * (1.0 - w) + n_[j] * w;
    const double k = k_[j - 1] * (1.0 - w) + k_[j] * w;
    return 2.0 * n * k;
}

double TabulatedMaterial::n_at(double omega_ev) const { return interp_log(n_, omega_ev); }
double TabulatedMaterial::k_at(double omega_ev) const { return interp_log(k_, omega_ev); }

std::complex<double> TabulatedMaterial::eps_real_axis(double omega_ev) const {
    if (!(omega_ev > 0.0))
        throw std::invalid_argument("eps_real_axis: omega must be positive");
    if (omega_ev < grid_.front()) {
        if (auto* t = std::get_if<DrudeTail>(&low_)) {
            const std::complex<double> iu(0.0, 1.0);
            return 1.0 - t->omega_p * t->omega_p /
                             (omega_ev * omega_ev + iu * t->gamma_p * omega_ev);
        }
        const std::complex<double> nk(n_.front(), k_.front());
        return nk * nk;
    }
    if (omega_ev > grid_.back()) {
        // Re eps drifts to 1 as w^-2; Im eps follows the power-law tail.
        const std::complex<double> nk(n_.back(), k_.back());
        const std::complex<double> eps_b = nk * nk;
        const double fr = grid_.back() / omega_ev;
        return {1.0 + (eps_b.real() - 1.0) * fr * fr,
                eps_b.imag() * std::pow(fr, high_.exponent)};
    }
    const std::complex<double> nk(n_at(omega_ev), k_at(omega_ev));
    return nk * nk;
}

double TabulatedMaterial::eps_imag_axis(double xi_ev) const {
    if (!(xi_ev > 0.0))
        throw std::invalid_argument("eps_imag_axis: xi must be positive");
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        const auto it = cache_->values.find(xi_ev);
        if (it != cache_->values.end()) return it->second;
    }
    const double xi2 = xi_ev * xi_ev;
    const double a = grid_.front();
    const double b = grid_.back();

    QuadratureSettings qs;
    qs.rel_tol = 1e-8;
    qs.abs_tol = 1e-13;

    // grid part, integrated in u = ln w, split at the kernel peak w = xi
    auto grid_part = [&](double lo, double hi) {
        if (!(hi > lo)) return QuadResult{0.0, 0.0, 0, true};
        auto f = [&](double u) {
            const double w = std::exp(u);
            return w * w * im_eps_at_log(u) / (w * w + xi2);  // extra w from du jacobian
        };
        return integrate_adaptive(f, std::log(lo), std::log(hi), qs);
    };
    double integral = 0.0;
    if (xi_ev > a && xi_ev < b) {
        integral = grid_part(a, xi_ev).value + grid_part(xi_ev, b).value;
    } else {
        integral = grid_part(a, b).value;
    }

    // low-frequency tail [0, a]
    if (std::holds_alternative<DrudeTail>(low_)) {
        const auto& t = std::get<DrudeTail>(low_);
        const double wp2g = t.omega_p * t.omega_p * t.gamma_p;
        const double g = t.gamma_p;
        if (std::abs(xi_ev - g) > 1e-6 * g) {
            integral += wp2g / (xi2 - g * g) *
                        (std::atan(a / g) / g - std::atan(a / xi_ev) / xi_ev);
        } else {
            // degenerate xi = gamma: integral of dw/(w^2+g^2)^2
            integral += wp2g * (a / (2.0 * g * g * (a * a + g * g)) +
                                std::atan(a / g) / (2.0 * g * g * g));
        }
    } else {
        const double im0 = 2.0 * n_.front() * k_.front();
        integral += 0.5 * im0 * std::log1p(a * a / xi2);
    }

    // high-frequency tail [b, inf) via v = b/w
    {
        const double im_b = 2.0 * n_.back() * k_.back();
        const double s = high_.exponent;
        if (im_b > 0.0) {
            auto f = [&](double v) {
                return im_b * b * b * std::pow(v, s - 1.0) / (b * b + xi2 * v * v);
            };
            integral += integrate_adaptive(f, 0.0, 1.0, qs).value;
        }
    }

    const double result = 1.0 + (2.0 / kPi) * integral;
    {
        std::lock_guard<std::mutex> lock(cache_->mutex);
        cache_->values.emplace(xi_ev, result);
    }
    return result;
}

// ---------------------------------------------------------------- material

Material Material::drude(double omega_p, double gamma_p, std::string name) {
    DrudeModel m{omega_p, gamma_p};
    validate_drude(m);
    if (name.empty())
        name = "drude(" + std::to_string(omega_p) + "," + std::to_string(gamma_p) + ")";
    return Material(m, std::move(name));
}

Material Material::lorentz(double c_l, double omega_l, double gamma_l, std::string name) {
    LorentzModel m{c_l, omega_l, gamma_l};
    validate_lorentz(m);
    if (name.empty())
        name = "lorentz(" + std::to_string(c_l) + "," + std::to_string(omega_l) + "," +
               std::to_string(gamma_l) + ")";
    return Material(m, std::move(name));
}

Material Material::tabulated(TabulatedMaterial table, std::string name) {
    return Material(std::move(table), std::move(name));
}

Material Material::vacuum() { return Material(ConstantEps{1.0}, "vacuum"); }

Material Material::constant_eps(double eps, std::string name) {
    if (!(eps >= 1.0))
        throw std::invalid_argument("constant_eps: eps must be >= 1");
    if (name.empty()) name = "eps(" + std::to_string(eps) + ")";
    return Material(ConstantEps{eps}, std::move(name));
}

std::complex<double> Material::eps_real_axis(double omega_ev) const {
    if (!(omega_ev > 0.0))
        throw std::invalid_argument("eps_real_axis: omega must be positive");
    const std::complex<double> iu(0.0, 1.0);
    return std::visit(
        [&](const auto& m) -> std::complex<double> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DrudeModel>) {
                return 1.0 - m.omega_p * m.omega_p /
                                 (omega_ev * omega_ev + iu * m.gamma_p * omega_ev);
            } else if constexpr (std::is_same_v<T, LorentzModel>) {
                return 1.0 + m.c_l * m.omega_l * m.omega_l /
                                 (m.omega_l * m.omega_l - omega_ev * omega_ev -
                                  iu * m.gamma_l * omega_ev);
            } else if constexpr (std::is_same_v<T, TabulatedMaterial>) {
                return m.eps_real_axis(omega_ev);
            } else {
                return {m.eps, 0.0};
            }
        },
        model_);
}

double Material::eps_imag_axis(double xi_ev) const {
    if (!(xi_ev > 0.0))
        throw std::invalid_argument("eps_imag_axis: xi must be positive");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DrudeModel>) {
                return 1.0 + m.omega_p * m.omega_p / (xi_ev * xi_ev + m.gamma_p * xi_ev);
            } else if constexpr (std::is_same_v<T, LorentzModel>) {
                return 1.0 + m.c_l * m.omega_l * m.omega_l /
                                 (m.omega_l * m.omega_l + xi_ev * xi_ev + m.gamma_l * xi_ev);
            } else if constexpr (std::is_same_v<T, TabulatedMaterial>) {
                return m.eps_imag_axis(xi_ev);
            } else {
                return m.eps;
            }
        },
        model_);
}

std::optional<double> Material::plasma_energy() const {
    if (auto* d = std::get_if<DrudeModel>(&model_)) return d->omega_p;
    if (auto* t = std::get_if<TabulatedMaterial>(&model_)) {
        if (auto* tail = std::get_if<DrudeTail>(&t->low_extrapolation()))
            return tail->omega_p;
    }
    return std::nullopt;
}

double Material::characteristic_energy() const {
    return std::visit(
        [](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DrudeModel>) {
                return m.omega_p;
            } else if constexpr (std::is_same_v<T, LorentzModel>) {
                return m.omega_l * std::sqrt(1.0 + m.c_l);
            } else if constexpr (std::is_same_v<T, TabulatedMaterial>) {
                const auto& g = m.grid();
                return std::clamp(std::sqrt(g.front() * g.back()), 1.0, 30.0);
            } else {
                return 1.0;
            }
        },
        model_);
}

// ------------------------------------------------------------ root finding

namespace {

double bisect_re_eps(const Material& m, double target, double lo, double hi,
                     const char* what) {
    auto f = [&](double w) { return m.eps_real_axis(w).real() - target; };

    // Locate a sign-change subinterval first; Re eps need not be monotone.
    // Up-crossings (Re eps rising through the target) are the plasma-edge
    // zeros of interest; a Lorentz resonance also produces a down-crossing
    // just above omega_l which must not shadow them.
    const int scan = 256;
    double a = lo, b = hi;
    bool found = false;
    double xa = lo, fa = f(lo);
    double fallback_a = 0.0, fallback_b = 0.0;
    bool have_fallback = false;
    for (int i = 1; i <= scan; ++i) {
        const double x = lo * std::pow(hi / lo, static_cast<double>(i) / scan);
        const double fx = f(x);
        if (fa <= 0.0 && fx > 0.0) {
            a = xa;
            b = x;
            found = true;
            break;
        }
        if (!have_fallback && fa * fx < 0.0) {
            fallback_a = xa;
            fallback_b = x;
            have_fallback = true;
        }
        xa = x;
        fa = fx;
    }
    if (!found && have_fallback) {
        a = fallback_a;
        b = fallback_b;
        found = true;
    }
    if (!found)
        throw std::invalid_argument(std::string(what) +
                                    ": no sign change of Re eps in bracket [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "] eV");
    fa = f(a);

    double fb = f(b);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if ((b - a) <= 1e-10 * mid) return mid;
        const double fm = f(mid);
        if (fa * fm <= 0.0) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
    }
    (void)fb;
    return 0.5 * (a + b);
}

}  // namespace

double find_enz_frequency(const Material& m, double bracket_lo, double bracket_hi) {
    const double wc = m.characteristic_energy();
    if (bracket_lo <= 0.0) bracket_lo = 0.2 * wc;
    if (bracket_hi <= 0.0) bracket_hi = 2.0 * wc;
    return bisect_re_eps(m, 0.0, bracket_lo, bracket_hi, "find_enz_frequency");
}

double find_spp_frequency(const Material& m, double bracket_lo, double bracket_hi) {
    const double wc = m.characteristic_energy();
    if (bracket_lo <= 0.0) bracket_lo = 0.05 * wc;
    if (bracket_hi <= 0.0) bracket_hi = 2.0 * wc;
    return bisect_re_eps(m, -1.0, bracket_lo, bracket_hi, "find_spp_frequency");
}

// ------------------------------------------------------------- table files

TabulatedMaterial load_nk_table(const std::filesystem::path& path,
                                LowFreqExtrapolation low, PowerLawDecay high) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_nk_table: cannot open " + path.string());

    std::vector<double> grid, nv, kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double e, n, k;
        if (!(ss >> e)) continue;  // blank
        if (!(ss >> n >> k))
            throw std::invalid_argument("load_nk_table: line " + std::to_string(lineno) +
                                        ": expected 3 columns (energy_eV n k)");
        double extra;
        if (ss >> extra)
            throw std::invalid_argument("load_nk_table: line " + std::to_string(lineno) +
                                        ": more than 3 columns");
        if (!grid.empty() && !(e > grid.back()))
            throw std::invalid_argument("load_nk_table: line " + std::to_string(lineno) +
                                        ": energies not strictly increasing");
        if (k < 0.0)
            throw std::invalid_argument("load_nk_table: line " + std::to_string(lineno) +
                                        ": negative k");
        grid.push_back(e);
        nv.push_back(n);
        kv.push_back(k);
    }
    if (grid.size() < 8)
        throw std::invalid_argument("load_nk_table: " + path.string() +
                                    ": fewer than 8 data rows");
    return TabulatedMaterial(std::move(grid), std::move(nv), std::move(kv), low, high);
}

}  // namespace casimir
