#include "casimir/presets.hpp"

#include <fstream>

#include <json.hpp>

#include "casimir/fom_scan.hpp"
#include "casimir/mode_analysis.hpp"
#include "casimir/scenario.hpp"

namespace casimir {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvFile {
 public:
    CsvFile(const std::filesystem::path& path, const json& meta,
            const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw std::invalid_argument("cannot open output file " + path.string());
        for (auto it = meta.begin(); it != meta.end(); ++it)
            out_ << "# " << it.key() << " = "
                 << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
                 << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt(values[i]);
        out_ << "\n";
    }
    void row_labeled(const std::string& label, const std::vector<double>& values) {
        out_ << fmt(values[0]) << "," << label;
        for (std::size_t i = 1; i < values.size(); ++i) out_ << "," << fmt(values[i]);
        out_ << "\n";
    }

 private:
    std::ofstream out_;
};

json quad_meta(const QuadratureSettings& q) {
    return {{"rel_tol", q.rel_tol}, {"max_evals", q.max_evals}};
}

struct PresetContext {
    std::filesystem::path outdir;
    std::filesystem::path data_dir;
    QuadratureSettings quad;
    std::vector<std::filesystem::path> written;
    json manifest;

    std::filesystem::path file(const std::string& name) {
        written.push_back(outdir / name);
        return written.back();
    }
    void finish(const std::string& preset) {
        manifest["preset"] = preset;
        manifest["quadrature"] = quad_meta(quad);
        json outs = json::array();
        for (const auto& p : written) outs.push_back(p.filename().string());
        manifest["outputs"] = outs;
        const auto path = outdir / "manifest.json";
        std::ofstream out(path);
        out << manifest.dump(2) << "\n";
        written.push_back(path);
    }
};

const std::vector<std::string> kSpectrumColumns = {
    "omega_eV", "p_total", "p_ev_TM", "p_ev_TE", "p_prop_TM", "p_prop_TE"};

void write_spectrum_csv(PresetContext& ctx, const std::string& name, const Material& mat,
                        double t, double d, double wmin, double wmax, int points) {
    const CavityConfig cfg(SlabGeometry(t, mat), d);
    GridPolicy grid;
    grid.points = points;
    const ForceSpectrum spec = force_spectrum(cfg, wmin, wmax, grid, ctx.quad);

    json meta = {{"material", mat.name()}, {"t_nm", t},         {"d_nm", d},
                 {"omega_min_eV", wmin},   {"omega_max_eV", wmax}, {"points", points}};
    CsvFile csv(ctx.file(name), meta, kSpectrumColumns);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& sd = spec.density(i);
        csv.row({spec.omega()[i], sd.total(), sd.evanescent_tm, sd.evanescent_te,
                 sd.propagating_tm, sd.propagating_te});
    }
    ctx.manifest["panels"][name] = meta;
}

void write_modes_csv(PresetContext& ctx, const std::string& name, const Material& mat,
                     double t, const std::vector<double>& d_list, double wmin, double wmax,
                     int points) {
    GridPolicy grid;
    grid.points = points;
    const auto rows =
        track_modes(SlabGeometry(t, mat), d_list, wmin, wmax, grid, ctx.quad);

    json meta = {{"material", mat.name()},
                 {"t_nm", t},
                 {"d_nm", d_list},
                 {"omega_min_eV", wmin},
                 {"omega_max_eV", wmax},
                 {"points", points}};
    CsvFile csv(ctx.file(name), meta,
                {"d_nm", "label", "omega_peak_eV", "omega_valley_eV", "band_lo_eV",
                 "band_hi_eV", "band_pressure_Pa"});
    for (const auto& r : rows)
        csv.row_labeled(to_string(r.pair.label),
                        {r.separation_nm, r.pair.omega_peak, r.pair.omega_valley,
                         r.pair.band_lo, r.pair.band_hi, r.band_pressure_pa});
    ctx.manifest["panels"][name] = meta;
}

void write_fom_csv(PresetContext& ctx, const std::string& name, const Material& mat,
                   const std::vector<double>& t_grid, const std::vector<double>& d_list) {
    json meta = {{"material", mat.name()},
                 {"t_grid_nm", {t_grid.front(), t_grid.back(), t_grid.size()}},
                 {"d_nm", d_list}};
    CsvFile csv(ctx.file(name), meta, {"t_nm", "d_nm", "pressure_Pa", "fom_Pa_per_nm"});
    for (double d : d_list) {
        const FomScanResult r = sweep_fom(mat, d, t_grid, ctx.quad);
        for (const auto& p : r.points)
            csv.row({p.t_nm, p.d_nm, p.pressure_pa, p.fom_pa_per_nm});
    }
    ctx.manifest["panels"][name] = meta;
}

void write_topt_csv(PresetContext& ctx, const std::string& name, const Material& mat,
                    const std::vector<double>& t_grid, const std::vector<double>& d_list) {
    const auto curve = optimal_thickness_curve(mat, d_list, t_grid, ctx.quad);
    json meta = {{"material", mat.name()},
                 {"t_grid_nm", {t_grid.front(), t_grid.back(), t_grid.size()}},
                 {"d_nm", d_list}};
    CsvFile csv(ctx.file(name), meta, {"d_nm", "t_opt_nm"});
    for (const auto& p : curve) {
        if (!p.t_opt_nm)
            throw convergence_error("preset " + name + ": d = " + fmt(p.d_nm) + " nm: " +
                                    p.error);
        csv.row({p.d_nm, *p.t_opt_nm});
    }
    ctx.manifest["panels"][name] = meta;
}

Material reference_drude() { return Material::drude(3.0, 0.035, "drude(3,0.035)"); }
Material reference_lorentz() { return Material::lorentz(1.0, 15.0, 0.01, "lorentz(1,15,0.01)"); }

}  // namespace

std::vector<std::string> known_presets() {
    return {"fig1", "fig2", "fig3", "figS1", "figS2"};
}

std::vector<std::filesystem::path> run_figure_preset(const std::string& name,
                                                     const std::filesystem::path& outdir,
                                                     const std::filesystem::path& data_dir,
                                                     const QuadratureSettings& quad) {
    std::filesystem::create_directories(outdir);
    PresetContext ctx{outdir, data_dir, quad, {}, json::object()};

    const std::vector<double> d_panels = {10.0, 100.0, 1000.0};
    const std::vector<double> t_grid = log_grid(0.5, 500.0, 24);

    if (name == "fig1") {
        write_spectrum_csv(ctx, "fig1a_t200nm_d10nm.csv", reference_drude(), 200.0, 10.0,
                           0.05, 6.0, 600);
        write_spectrum_csv(ctx, "fig1b_t2nm_d10nm.csv", reference_drude(), 2.0, 10.0,
                           0.05, 6.0, 600);
    } else if (name == "figs1" || name == "figS1") {
        int panel = 0;
        for (double t : {200.0, 2.0}) {
            for (double d : d_panels) {
                const std::string file = "figS1" + std::string(1, static_cast<char>('a' + panel)) +
                                         "_t" + fmt(t) + "nm_d" + fmt(d) + "nm.csv";
                write_spectrum_csv(ctx, file, reference_drude(), t, d, 0.05, 6.0, 600);
                ++panel;
            }
        }
    } else if (name == "fig2") {
        write_modes_csv(ctx, "fig2_modes_t2nm.csv", reference_drude(), 2.0,
                        {10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0}, 0.05, 6.0, 600);
    } else if (name == "fig3") {
        write_fom_csv(ctx, "fig3ab_drude.csv", reference_drude(), t_grid, d_panels);
        write_fom_csv(ctx, "fig3ab_lorentz.csv", reference_lorentz(), t_grid, d_panels);
        {
            const AsymptoteFit fit = asymptote_check(reference_drude(), 10.0, 20.0, 500.0,
                                                     12, ctx.quad);
            ctx.manifest["panels"]["fig3c_asymptote"] = {
                {"alpha_per_nm", fit.alpha},
                {"amplitude", fit.amplitude},
                {"rel_rms_residual", fit.rel_rms_residual},
                {"slope_top_half_decade", fit.slope_top_half_decade},
                {"fit_range_nm", {20.0, 500.0}}};
        }
        write_topt_csv(ctx, "fig3d_topt_lorentz.csv", reference_lorentz(), t_grid,
                       log_grid(10.0, 1000.0, 13));
    } else if (name == "figs2" || name == "figS2") {
        MaterialSpec au{"au", {}, false, 3.0};
        MaterialSpec sio2{"sio2", {}, false, 3.0};
        const Material m_au = resolve_material(au, data_dir);
        const Material m_sio2 = resolve_material(sio2, data_dir);
        write_fom_csv(ctx, "figS2_au.csv", m_au, t_grid, d_panels);
        write_fom_csv(ctx, "figS2_sio2.csv", m_sio2, t_grid, d_panels);
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (known: fig1, fig2, fig3, figS1, figS2)");
    }

    ctx.finish(name);
    return ctx.written;
}

}  // namespace casimir
