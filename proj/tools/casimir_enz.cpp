// casimir-enz: Casimir pressure, real-frequency force spectra, thin-film
// mode analysis and force-density scans for freestanding film pairs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/fom_scan.hpp"
#include "casimir/mode_analysis.hpp"
#include "casimir/presets.hpp"
#include "casimir/scenario.hpp"

using namespace casimir;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Output {
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::invalid_argument("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

void write_header(std::ostream& out, const Scenario& s) {
    for (const auto& [k, v] : s.header_entries()) out << "# " << k << " = " << v << "\n";
}

struct CommonArgs {
    std::string scenario_path;
    std::string material;
    std::string t_spec, d_spec;
    std::string output;
    std::string data_dir;
    double rel_tol = 0.0;
    long long max_evals = 0;

    void attach(CLI::App* cmd, bool need_t = true) {
        cmd->add_option("--scenario", scenario_path, "scenario file (key = value lines)");
        cmd->add_option("--material", material,
                        "drude:wp,gp | lorentz:c,wl,gl | eps:v | vacuum | au | sio2 | path");
        if (need_t) cmd->add_option("--t", t_spec, "film thickness (nm/um suffix ok) or grid");
        cmd->add_option("--d", d_spec, "gap (nm/um suffix ok) or grid");
        cmd->add_option("--output", output, "output file (default stdout)");
        cmd->add_option("--data-dir", data_dir, "directory with bundled n,k tables");
        cmd->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
        cmd->add_option("--max-evals", max_evals, "integrand evaluation budget per pressure");
    }

    Scenario build(Task task) const {
        Scenario s;
        if (!scenario_path.empty()) {
            std::ifstream in(scenario_path);
            if (!in) throw std::invalid_argument("cannot open scenario " + scenario_path);
            std::stringstream ss;
            ss << in.rdbuf();
            s = parse_scenario(ss.str());
        } else {
            if (material.empty())
                throw std::invalid_argument("--material (or --scenario) is required");
            if (t_spec.empty())
                throw std::invalid_argument("--t (or --scenario) is required");
            if (d_spec.empty())
                throw std::invalid_argument("--d (or --scenario) is required");
        }
        s.task = task;
        if (!material.empty()) s.material.text = material;
        if (!t_spec.empty()) s.t_nm = parse_grid(t_spec, "t");
        if (!d_spec.empty()) s.d_nm = parse_grid(d_spec, "d");
        if (rel_tol > 0.0) s.rel_tol = rel_tol;
        if (max_evals > 0) s.max_evals = max_evals;
        if (!output.empty()) s.output = output;
        return s;
    }

    std::filesystem::path resolved_data_dir() const {
        return data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir);
    }
};

double auto_omega_max(const Scenario& s, const Material& m) {
    return s.omega_max_ev > 0.0 ? s.omega_max_ev : 2.0 * m.characteristic_energy();
}

int run_pressure(const CommonArgs& args) {
    const Scenario s = args.build(Task::pressure);
    const Material mat = resolve_material(s.material, args.resolved_data_dir());
    Output out(s.output);
    for (double t : s.t_nm) {
        for (double d : s.d_nm) {
            const PressureResult p =
                total_pressure(CavityConfig(SlabGeometry(t, mat), d), s.quadrature());
            json line = {{"t_nm", t},
                         {"d_nm", d},
                         {"pressure_Pa", p.pressure_pa},
                         {"error_Pa", p.est_abs_error_pa},
                         {"evaluations", p.evaluations}};
            out.stream() << line.dump() << "\n";
        }
    }
    return 0;
}

int run_spectrum(const CommonArgs& args, double omega_min, double omega_max, int points) {
    Scenario s = args.build(Task::spectrum);
    if (omega_min > 0.0) s.omega_min_ev = omega_min;
    if (omega_max > 0.0) s.omega_max_ev = omega_max;
    if (points > 0) s.spectrum_points = points;
    const Material mat = resolve_material(s.material, args.resolved_data_dir());
    const double wmax = auto_omega_max(s, mat);
    if (s.t_nm.size() != 1 || s.d_nm.size() != 1)
        throw std::invalid_argument(
            "spectrum: takes a single t and d (use the figS1 preset for sweeps)");

    Output out(s.output);
    write_header(out.stream(), s);
    out.stream() << "omega_eV,p_total,p_ev_TM,p_ev_TE,p_prop_TM,p_prop_TE\n";
    GridPolicy grid;
    grid.points = s.spectrum_points;
    const ForceSpectrum spec =
        force_spectrum(CavityConfig(SlabGeometry(s.t_nm[0], mat), s.d_nm[0]), s.omega_min_ev,
                       wmax, grid, s.quadrature());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& sd = spec.density(i);
        out.stream() << fmt(spec.omega()[i]) << "," << fmt(sd.total()) << ","
                     << fmt(sd.evanescent_tm) << "," << fmt(sd.evanescent_te) << ","
                     << fmt(sd.propagating_tm) << "," << fmt(sd.propagating_te) << "\n";
    }
    return 0;
}

int run_modes(const CommonArgs& args, double omega_min, double omega_max, int points) {
    Scenario s = args.build(Task::modes);
    if (omega_min > 0.0) s.omega_min_ev = omega_min;
    if (omega_max > 0.0) s.omega_max_ev = omega_max;
    if (points > 0) s.spectrum_points = points;
    const Material mat = resolve_material(s.material, args.resolved_data_dir());
    const double wmax = auto_omega_max(s, mat);

    Output out(s.output);
    write_header(out.stream(), s);
    out.stream()
        << "d_nm,label,omega_peak_eV,omega_valley_eV,band_lo_eV,band_hi_eV,band_pressure_Pa\n";
    GridPolicy grid;
    grid.points = s.spectrum_points;
    for (double t : s.t_nm) {
        const auto rows =
            track_modes(SlabGeometry(t, mat), s.d_nm, s.omega_min_ev, wmax, grid,
                        s.quadrature());
        for (const auto& r : rows) {
            out.stream() << fmt(r.separation_nm) << "," << to_string(r.pair.label) << ","
                         << fmt(r.pair.omega_peak) << "," << fmt(r.pair.omega_valley) << ","
                         << fmt(r.pair.band_lo) << "," << fmt(r.pair.band_hi) << ","
                         << fmt(r.band_pressure_pa) << "\n";
        }
    }
    return 0;
}

int run_fom(const CommonArgs& args, bool find_optimum) {
    Scenario s = args.build(Task::fom);
    if (find_optimum) s.find_optimum = true;
    const Material mat = resolve_material(s.material, args.resolved_data_dir());

    Output out(s.output);
    write_header(out.stream(), s);
    if (s.find_optimum) {
        out.stream() << "d_nm,t_opt_nm\n";
        const auto curve = optimal_thickness_curve(mat, s.d_nm, s.t_nm, s.quadrature());
        bool any_missing = false;
        for (const auto& p : curve) {
            if (p.t_opt_nm) {
                out.stream() << fmt(p.d_nm) << "," << fmt(*p.t_opt_nm) << "\n";
            } else {
                out.stream() << fmt(p.d_nm) << ",# " << p.error << "\n";
                any_missing = true;
            }
        }
        if (any_missing)
            std::cerr << "casimir-enz: some separations have no interior FOM maximum\n";
        return 0;
    }
    out.stream() << "t_nm,d_nm,pressure_Pa,fom_Pa_per_nm\n";
    for (double d : s.d_nm) {
        if (s.t_nm.size() >= 8) {
            const FomScanResult r = sweep_fom(mat, d, s.t_nm, s.quadrature());
            for (const auto& p : r.points)
                out.stream() << fmt(p.t_nm) << "," << fmt(p.d_nm) << "," << fmt(p.pressure_pa)
                             << "," << fmt(p.fom_pa_per_nm) << "\n";
        } else {
            for (double t : s.t_nm) {
                const FomPoint p = fom(CavityConfig(SlabGeometry(t, mat), d), s.quadrature());
                out.stream() << fmt(p.t_nm) << "," << fmt(p.d_nm) << "," << fmt(p.pressure_pa)
                             << "," << fmt(p.fom_pa_per_nm) << "\n";
            }
        }
    }
    return 0;
}

int run_materials_show(const std::string& name, const std::string& data_dir,
                       const std::string& output) {
    MaterialSpec spec;
    spec.text = name;
    const Material mat = resolve_material(
        spec, data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir));
    Output out(output);
    out.stream() << "# material = " << mat.name() << "\n";
    out.stream() << "energy_eV,re_eps_real_axis,im_eps_real_axis,eps_imag_axis\n";
    for (int i = 0; i <= 160; ++i) {
        const double w = 0.01 * std::pow(1e4, i / 160.0);
        const auto eps = mat.eps_real_axis(w);
        out.stream() << fmt(w) << "," << fmt(eps.real()) << "," << fmt(eps.imag()) << ","
                     << fmt(mat.eps_imag_axis(w)) << "\n";
    }
    return 0;
}

int run_optics_reflect(const CommonArgs& args, double omega, double kmax_mult, int points) {
    const Scenario s = args.build(Task::spectrum);
    const Material mat = resolve_material(s.material, args.resolved_data_dir());
    if (!(omega > 0.0)) throw std::invalid_argument("--omega must be positive");

    Output out(s.output);
    out.stream() << "# material = " << mat.name() << ", omega_eV = " << fmt(omega) << "\n";
    out.stream() << "k_per_nm,re_r_TE,im_r_TE,abs_r_TE,re_r_TM,im_r_TM,abs_r_TM\n";
    const double w_c = omega / units::hbar_c;
    for (double t : s.t_nm) {
        const SlabGeometry slab(t, mat);
        for (int i = 0; i < points; ++i) {
            const double k = kmax_mult * w_c * i / (points - 1.0);
            const auto rte = slab_reflection_real(slab, omega, k, Polarization::te);
            const auto rtm = slab_reflection_real(slab, omega, k, Polarization::tm);
            out.stream() << fmt(k) << "," << fmt(rte.real()) << "," << fmt(rte.imag()) << ","
                         << fmt(std::abs(rte)) << "," << fmt(rtm.real()) << ","
                         << fmt(rtm.imag()) << "," << fmt(std::abs(rtm)) << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casimir solver for freestanding thin-film pairs: total pressure, "
                 "real-frequency force spectra, mode analysis, force-density scans"};
    app.require_subcommand(1);

    CommonArgs pressure_args, spectrum_args, modes_args, fom_args, optics_args;
    double omega_min = 0.0, omega_max = 0.0, optics_omega = 0.0, kmax_mult = 5.0;
    int points = 0, optics_points = 400;
    bool find_optimum = false;
    std::string show_name, show_data_dir, show_output;
    std::string preset_name, preset_outdir = "preset_out", preset_data_dir;
    double preset_rel_tol = 1e-7;

    auto* cmd_pressure =
        app.add_subcommand("pressure", "total Casimir pressure (single-line JSON per point)");
    pressure_args.attach(cmd_pressure);

    auto* cmd_spectrum =
        app.add_subcommand("spectrum", "force spectral density over real frequencies (CSV)");
    spectrum_args.attach(cmd_spectrum);
    cmd_spectrum->add_option("--omega-min", omega_min, "band start, eV");
    cmd_spectrum->add_option("--omega-max", omega_max, "band end, eV (default 2x material scale)");
    cmd_spectrum->add_option("--points", points, "base grid points");

    auto* cmd_modes =
        app.add_subcommand("modes", "peak-valley pair tracking across separations (CSV)");
    modes_args.attach(cmd_modes);
    cmd_modes->add_option("--omega-min", omega_min, "band start, eV");
    cmd_modes->add_option("--omega-max", omega_max, "band end, eV");
    cmd_modes->add_option("--points", points, "base grid points");

    auto* cmd_fom = app.add_subcommand("fom", "averaged force density vs thickness (CSV)");
    fom_args.attach(cmd_fom);
    cmd_fom->add_flag("--find-optimum", find_optimum, "emit (d, t_opt) instead of the scan");

    auto* cmd_materials = app.add_subcommand("materials", "material utilities");
    auto* cmd_show = cmd_materials->add_subcommand("show", "print eps on both axes as CSV");
    cmd_show->add_option("name", show_name, "material spec or n,k table path")->required();
    cmd_show->add_option("--data-dir", show_data_dir, "directory with bundled tables");
    cmd_show->add_option("--output", show_output, "output file (default stdout)");

    auto* cmd_optics = app.add_subcommand("optics", "layer-optics diagnostics");
    auto* cmd_reflect = cmd_optics->add_subcommand("reflect", "slab r(k) at fixed omega (CSV)");
    optics_args.attach(cmd_reflect);
    cmd_reflect->add_option("--omega", optics_omega, "frequency, eV")->required();
    cmd_reflect->add_option("--kmax-mult", kmax_mult, "k range in units of omega/c");
    cmd_reflect->add_option("--points", optics_points, "k samples");

    auto* cmd_preset =
        app.add_subcommand("preset", "write the reference figure datasets + manifest");
    cmd_preset->add_option("name", preset_name, "fig1 | fig2 | fig3 | figS1 | figS2")
        ->required();
    cmd_preset->add_option("--outdir", preset_outdir, "output directory");
    cmd_preset->add_option("--data-dir", preset_data_dir, "directory with bundled tables");
    cmd_preset->add_option("--rel-tol", preset_rel_tol, "quadrature relative tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_pressure->parsed()) return run_pressure(pressure_args);
        if (cmd_spectrum->parsed()) return run_spectrum(spectrum_args, omega_min, omega_max, points);
        if (cmd_modes->parsed()) return run_modes(modes_args, omega_min, omega_max, points);
        if (cmd_fom->parsed()) return run_fom(fom_args, find_optimum);
        if (cmd_materials->parsed()) {
            if (!cmd_show->parsed()) throw std::invalid_argument("materials: use 'show'");
            return run_materials_show(show_name, show_data_dir, show_output);
        }
        if (cmd_optics->parsed()) {
            if (!cmd_reflect->parsed()) throw std::invalid_argument("optics: use 'reflect'");
            return run_optics_reflect(optics_args, optics_omega, kmax_mult, optics_points);
        }
        if (cmd_preset->parsed()) {
            QuadratureSettings quad;
            quad.rel_tol = preset_rel_tol;
            const auto files = run_figure_preset(
                preset_name, preset_outdir,
                preset_data_dir.empty() ? default_data_dir()
                                        : std::filesystem::path(preset_data_dir),
                quad);
            for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "casimir-enz: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "casimir-enz: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "casimir-enz: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
