#include "casimir/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace casimir {

std::string to_string(Task t) {
    switch (t) {
        case Task::pressure: return "pressure";
        case Task::spectrum: return "spectrum";
        case Task::modes: return "modes";
        default: return "fom";
    }
}

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_number(std::string tok, const std::string& key) {
    tok = trim(tok);
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("key '" + key + "': cannot parse number '" + tok + "'");
    }
}

// value with optional nm/um/eV suffix; returns (number, unit-string)
std::pair<double, std::string> parse_with_unit(std::string tok, const std::string& key) {
    tok = trim(tok);
    std::string unit;
    for (const char* u : {"nm", "um", "µm", "ev", "eV"}) {
        const std::string s(u);
        if (tok.size() > s.size() &&
            lower(tok.substr(tok.size() - s.size())) == lower(s)) {
            unit = lower(s);
            tok = trim(tok.substr(0, tok.size() - s.size()));
            break;
        }
    }
    return {parse_number(tok, key), unit};
}

double apply_length_unit(double v, const std::string& unit, const std::string& key) {
    if (unit.empty() || unit == "nm") return v;
    if (unit == "um" || unit == "µm") return v * 1000.0;
    throw std::invalid_argument("key '" + key + "': unexpected unit '" + unit + "'");
}

}  // namespace

double parse_length_nm(const std::string& text, const std::string& key) {
    auto [v, unit] = parse_with_unit(text, key);
    return apply_length_unit(v, unit, key);
}

std::vector<double> parse_grid(const std::string& text, const std::string& key) {
    std::string body = trim(text);
    std::vector<double> out;

    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("key '" + key + "': malformed grid '" + text + "' (" +
                                    why + ")");
    };

    const std::string low = lower(body);
    if (low.rfind("log:", 0) == 0 || low.rfind("lin:", 0) == 0) {
        const bool logspace = low[0] == 'l' && low[1] == 'o';
        std::stringstream ss(body.substr(4));
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
            fail("expected lo,hi,n");
        const double lo_v = parse_length_nm(a, key);
        const double hi_v = parse_length_nm(b, key);
        const int n = static_cast<int>(parse_number(c, key));
        if (n < 2) fail("need at least 2 points");
        if (!(hi_v > lo_v)) fail("need lo < hi");
        if (logspace && !(lo_v > 0.0)) fail("log grid needs lo > 0");
        for (int i = 0; i < n; ++i) {
            out.push_back(logspace
                              ? lo_v * std::pow(hi_v / lo_v, static_cast<double>(i) / (n - 1))
                              : lo_v + (hi_v - lo_v) * i / (n - 1.0));
        }
        return out;
    }

    // comma list; a trailing unit ("10,100,1000 nm") applies to every token
    std::string list = body, trailing_unit;
    for (const char* u : {"nm", "um", "µm", "ev", "eV"}) {
        const std::string s(u);
        if (list.size() > s.size() && lower(list.substr(list.size() - s.size())) == lower(s) &&
            std::isspace(static_cast<unsigned char>(list[list.size() - s.size() - 1]))) {
            trailing_unit = lower(s);
            list = trim(list.substr(0, list.size() - s.size()));
            break;
        }
    }
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) fail("empty entry");
        auto [v, unit] = parse_with_unit(tok, key);
        if (unit.empty()) unit = trailing_unit;
        if (unit == "ev") {
            out.push_back(v);
        } else {
            out.push_back(apply_length_unit(v, unit, key));
        }
    }
    if (out.empty()) fail("no entries");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i] > out[i - 1])) fail("entries must be strictly increasing");
    return out;
}

Scenario parse_scenario(const std::string& text) {
    std::map<std::string, std::pair<std::string, int>> kv;  // key -> (value, line)
    {
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                            ": expected key = value");
            const std::string key = lower(trim(line.substr(0, eq)));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                            ": empty key or value");
            if (kv.count(key))
                throw std::invalid_argument("scenario line " + std::to_string(lineno) +
                                            ": duplicate key '" + key + "'");
            kv[key] = {value, lineno};
        }
    }

    static const std::vector<std::string> known = {
        "task",          "material",       "nk_low_extrapolation",
        "nk_high_exponent", "t",           "d",
        "omega_min",     "omega_max",      "spectrum_points",
        "rel_tol",       "max_evals",      "find_optimum",
        "output"};
    for (const auto& [key, val] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("scenario line " + std::to_string(val.second) +
                                        ": unknown key '" + key + "'");
    }

    auto get = [&](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second.first;
    };
    auto require = [&](const std::string& key) {
        auto v = get(key);
        if (!v) throw std::invalid_argument("scenario: missing required key '" + key + "'");
        return *v;
    };

    Scenario s;
    {
        const std::string task = lower(require("task"));
        if (task == "pressure") s.task = Task::pressure;
        else if (task == "spectrum") s.task = Task::spectrum;
        else if (task == "modes") s.task = Task::modes;
        else if (task == "fom") s.task = Task::fom;
        else
            throw std::invalid_argument(
                "scenario: key 'task' must be pressure|spectrum|modes|fom, got '" + task + "'");
    }
    s.material.text = require("material");
    if (auto v = get("nk_low_extrapolation")) {
        const std::string val = lower(*v);
        if (val == "constant") {
            s.material.nk_low_constant = true;
        } else if (val.rfind("drude:", 0) == 0) {
            std::stringstream ss(val.substr(6));
            std::string a, b;
            if (!std::getline(ss, a, ',') || !std::getline(ss, b))
                throw std::invalid_argument(
                    "scenario: key 'nk_low_extrapolation': expected drude:omega_p,gamma_p");
            s.material.nk_low_drude =
                DrudeTail{parse_number(a, "nk_low_extrapolation"),
                          parse_number(b, "nk_low_extrapolation")};
        } else {
            throw std::invalid_argument(
                "scenario: key 'nk_low_extrapolation' must be constant or drude:wp,gp");
        }
    }
    if (auto v = get("nk_high_exponent"))
        s.material.nk_high_exponent = parse_number(*v, "nk_high_exponent");

    s.t_nm = parse_grid(require("t"), "t");
    s.d_nm = parse_grid(require("d"), "d");
    for (double t : s.t_nm)
        if (!(t > 0.0)) throw std::invalid_argument("scenario: key 't' must be positive");
    for (double d : s.d_nm)
        if (!(d > 0.0)) throw std::invalid_argument("scenario: key 'd' must be positive");

    if (auto v = get("omega_min")) s.omega_min_ev = parse_with_unit(*v, "omega_min").first;
    if (auto v = get("omega_max")) s.omega_max_ev = parse_with_unit(*v, "omega_max").first;
    if (!(s.omega_min_ev > 0.0))
        throw std::invalid_argument("scenario: key 'omega_min' must be positive");
    if (s.omega_max_ev != 0.0 && !(s.omega_max_ev > s.omega_min_ev))
        throw std::invalid_argument("scenario: key 'omega_max' must exceed omega_min");
    if (auto v = get("spectrum_points")) {
        s.spectrum_points = static_cast<int>(parse_number(*v, "spectrum_points"));
        if (s.spectrum_points < 8)
            throw std::invalid_argument("scenario: key 'spectrum_points' must be >= 8");
    }
    if (auto v = get("rel_tol")) {
        s.rel_tol = parse_number(*v, "rel_tol");
        if (!(s.rel_tol > 0.0))
            throw std::invalid_argument("scenario: key 'rel_tol' must be positive");
    }
    if (auto v = get("max_evals")) {
        s.max_evals = static_cast<long long>(parse_number(*v, "max_evals"));
        if (s.max_evals < 1000)
            throw std::invalid_argument("scenario: key 'max_evals' must be >= 1000");
    }
    if (auto v = get("find_optimum")) {
        const std::string val = lower(*v);
        if (val == "true" || val == "1" || val == "yes") s.find_optimum = true;
        else if (val == "false" || val == "0" || val == "no") s.find_optimum = false;
        else
            throw std::invalid_argument("scenario: key 'find_optimum' must be boolean");
    }
    if (auto v = get("output")) s.output = *v;
    return s;
}

std::vector<std::pair<std::string, std::string>> Scenario::header_entries() const {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::string(buf);
    };
    auto grid = [&](const std::vector<double>& g) {
        std::string s;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) s += ",";
            s += fmt(g[i]);
        }
        return s;
    };
    std::vector<std::pair<std::string, std::string>> h;
    h.emplace_back("task", to_string(task));
    h.emplace_back("material", material.text);
    if (material.nk_low_drude)
        h.emplace_back("nk_low_extrapolation",
                       "drude:" + fmt(material.nk_low_drude->omega_p) + "," +
                           fmt(material.nk_low_drude->gamma_p));
    else if (material.nk_low_constant)
        h.emplace_back("nk_low_extrapolation", "constant");
    h.emplace_back("nk_high_exponent", fmt(material.nk_high_exponent));
    h.emplace_back("t_nm", grid(t_nm));
    h.emplace_back("d_nm", grid(d_nm));
    h.emplace_back("omega_min_eV", fmt(omega_min_ev));
    h.emplace_back("omega_max_eV", omega_max_ev == 0.0 ? "auto" : fmt(omega_max_ev));
    h.emplace_back("spectrum_points", std::to_string(spectrum_points));
    h.emplace_back("rel_tol", fmt(rel_tol));
    h.emplace_back("max_evals", std::to_string(max_evals));
    h.emplace_back("find_optimum", find_optimum ? "true" : "false");
    return h;
}

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("CASIMIR_ENZ_DATA")) return env;
    return "data";
}

Material resolve_material(const MaterialSpec& spec, const std::filesystem::path& data_dir) {
    const std::string text = trim(spec.text);
    const std::string low = lower(text);

    auto parse_params = [&](const std::string& body, std::size_t n) {
        std::vector<double> p;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.push_back(parse_number(tok, "material"));
        if (p.size() != n)
            throw std::invalid_argument("material '" + text + "': expected " +
                                        std::to_string(n) + " parameters");
        return p;
    };

    if (low.rfind("drude:", 0) == 0) {
        const auto p = parse_params(text.substr(6), 2);
        return Material::drude(p[0], p[1]);
    }
    if (low.rfind("lorentz:", 0) == 0) {
        const auto p = parse_params(text.substr(8), 3);
        return Material::lorentz(p[0], p[1], p[2]);
    }
    if (low.rfind("eps:", 0) == 0) {
        const auto p = parse_params(text.substr(4), 1);
        return Material::constant_eps(p[0]);
    }
    if (low == "vacuum") return Material::vacuum();

    // named tables or a path
    std::filesystem::path path;
    LowFreqExtrapolation lowext = ConstantTail{};
    std::string name = text;
    if (low == "au") {
        path = data_dir / "au_nk.txt";
        lowext = DrudeTail{7.87, 0.053};  // effective Drude part of the table
    } else if (low == "sio2") {
        path = data_dir / "sio2_nk.txt";
    } else {
        path = text;
    }
    if (spec.nk_low_drude) lowext = *spec.nk_low_drude;
    else if (spec.nk_low_constant) lowext = ConstantTail{};

    if (!std::filesystem::exists(path)) {
        std::string hint;
        if (low == "au" || low == "sio2")
            hint = "; expected the bundled table at '" + path.string() +
                   "' (set CASIMIR_ENZ_DATA or --data-dir to the repository data/ "
                   "directory, or regenerate it with tools/make_nk_tables.py)";
        throw std::invalid_argument("material '" + text + "': no such n,k table file '" +
                                    path.string() + "'" + hint);
    }
    return Material::tabulated(load_nk_table(path, lowext, PowerLawDecay{spec.nk_high_exponent}),
                               low == "au" ? "au" : (low == "sio2" ? "sio2" : path.filename().string()));
}

}  // namespace casimir
