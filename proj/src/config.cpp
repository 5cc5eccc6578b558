#include "eigencurve/config.hpp"

#include <map>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "eigencurve/errors.hpp"
#include "eigencurve/expr.hpp"

namespace eigencurve {

CoefficientField field_build_dispatch(const FieldSpec& fs, const Mesh& mesh, int subdomain) {
    if (fs.kind == "constant") return field_constant(mesh, subdomain, fs.value);
    if (fs.kind == "expr") {
        auto fn = compile_expression(fs.expr);
        return field_from_function(mesh, subdomain, fn, "expr");
    }
    if (fs.kind == "piecewise") return field_piecewise(mesh, subdomain, fs.breakpoints, fs.values);
    throw ConfigError("unknown field kind '" + fs.kind + "'");
}

CoefficientField FieldSpec::build(const Mesh& mesh, int subdomain) const {
    return field_build_dispatch(*this, mesh, subdomain);
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

Sections split_sections(const std::string& text) {
    Sections out;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t cut = raw.find_first_of("#;");
        std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            out[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got \"" + line + "\"", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (section.empty()) throw ConfigError("key outside any [section]", line_no);
        if (out[section].count(key))
            throw ConfigError("duplicate key '" + key + "' in [" + section + "]", line_no);
        out[section][key] = {value, line_no};
    }
    return out;
}

double parse_double(const Entry& e, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError("bad number for '" + key + "': \"" + e.value + "\"", e.line);
    return v;
}

long parse_int(const Entry& e, const std::string& key) {
    const double v = parse_double(e, key);
    const long i = static_cast<long>(v);
    if (double(i) != v) throw ConfigError("expected an integer for '" + key + "'", e.line);
    return i;
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(e.value);
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ConfigError("bad number '" + tok + "' in list '" + key + "'", e.line);
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'", e.line);
    return out;
}

void parse_grid_pair(const Entry& e, int& a, int& b) {
    const std::size_t x = e.value.find('x');
    if (x == std::string::npos) throw ConfigError("grid must look like '11x11'", e.line);
    try {
        a = std::stoi(e.value.substr(0, x));
        b = std::stoi(e.value.substr(x + 1));
    } catch (...) {
        throw ConfigError("grid must look like '11x11'", e.line);
    }
    if (a < 2 || b < 2) throw ConfigError("grid needs at least 2 points per side", e.line);
}

FieldSpec parse_field(const std::map<std::string, Entry>& sec, const std::string& name, int) {
    FieldSpec fs;
    auto it = sec.find("kind");
    if (it == sec.end()) throw ConfigError("section [" + name + "] needs 'kind'");
    fs.kind = it->second.value;
    if (fs.kind == "constant") {
        auto v = sec.find("value");
        if (v == sec.end()) throw ConfigError("constant field [" + name + "] needs 'value'");
        fs.value = parse_double(v->second, "value");
    } else if (fs.kind == "expr") {
        auto v = sec.find("expr");
        if (v == sec.end()) throw ConfigError("expr field [" + name + "] needs 'expr'");
        fs.expr = v->second.value;
        compile_expression(fs.expr); // validate now, with the config line at hand
    } else if (fs.kind == "piecewise") {
        auto b = sec.find("breakpoints");
        auto v = sec.find("values");
        if (b == sec.end() || v == sec.end())
            throw ConfigError("piecewise field [" + name + "] needs 'breakpoints' and 'values'");
        fs.breakpoints = parse_list(b->second, "breakpoints");
        fs.values = parse_list(v->second, "values");
        if (fs.breakpoints.size() != fs.values.size() + 1)
            throw ConfigError("[" + name + "] needs one more breakpoint than values",
                              b->second.line);
    } else {
        throw ConfigError("unknown kind '" + fs.kind + "' in [" + name + "]", it->second.line);
    }
    // reject stray keys so typos fail loudly
    for (const auto& [key, entry] : sec) {
        if (key == "kind" || key == "value" || key == "expr" || key == "breakpoints" ||
            key == "values")
            continue;
        throw ConfigError("unknown key '" + key + "' in [" + name + "]", entry.line);
    }
    return fs;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    const Sections secs = split_sections(text);
    RunConfig cfg;

    auto section = [&](const std::string& name) -> const std::map<std::string, Entry>* {
        auto it = secs.find(name);
        return it == secs.end() ? nullptr : &it->second;
    };
    auto for_each_known = [&](const std::string& name,
                              const std::map<std::string, std::function<void(const Entry&)>>& keys) {
        const auto* sec = section(name);
        if (!sec) return;
        for (const auto& [key, entry] : *sec) {
            auto it = keys.find(key);
            if (it == keys.end())
                throw ConfigError("unknown key '" + key + "' in [" + name + "]", entry.line);
            it->second(entry);
        }
    };

    for_each_known("domain",
                   {{"x0", [&](const Entry& e) { cfg.domain.x0 = parse_double(e, "x0"); }},
                    {"xs", [&](const Entry& e) { cfg.domain.xs = parse_double(e, "xs"); }},
                    {"xL", [&](const Entry& e) { cfg.domain.xL = parse_double(e, "xL"); }},
                    {"radial_power",
                     [&](const Entry& e) { cfg.domain.radial_power = int(parse_int(e, "radial_power")); }},
                    {"n1", [&](const Entry& e) { cfg.domain.n1 = int(parse_int(e, "n1")); }},
                    {"n2", [&](const Entry& e) { cfg.domain.n2 = int(parse_int(e, "n2")); }}});

    for_each_known("coupling",
                   {{"gamma1", [&](const Entry& e) { cfg.gamma1 = parse_double(e, "gamma1"); }},
                    {"gamma2", [&](const Entry& e) { cfg.gamma2 = parse_double(e, "gamma2"); }}});

    if (const auto* sec = section("m1")) cfg.m1 = parse_field(*sec, "m1", 0);
    if (const auto* sec = section("m2")) cfg.m2 = parse_field(*sec, "m2", 0);
    if (const auto* sec = section("c1")) cfg.c1 = parse_field(*sec, "c1", 0);
    if (const auto* sec = section("c2")) cfg.c2 = parse_field(*sec, "c2", 0);

    for_each_known(
        "run",
        {{"seed", [&](const Entry& e) { cfg.seed = static_cast<unsigned long>(parse_int(e, "seed")); }},
         {"out", [&](const Entry& e) { cfg.out_dir = e.value; }},
         {"tol_eig", [&](const Entry& e) { cfg.tol_eig = parse_double(e, "tol_eig"); }},
         {"tol_curve", [&](const Entry& e) { cfg.tol_curve = parse_double(e, "tol_curve"); }}});
    if (cfg.tol_eig <= 0 || cfg.tol_curve <= 0) throw ConfigError("tolerances must be positive");

    for_each_known("eigen",
                   {{"mode", [&](const Entry& e) { cfg.eigen_mode = e.value; }},
                    {"refine", [&](const Entry& e) { cfg.eigen_refine = int(parse_int(e, "refine")); }},
                    {"dump_matrix",
                     [&](const Entry& e) { cfg.dump_matrix = parse_int(e, "dump_matrix") != 0; }}});
    if (cfg.eigen_mode != "interface" && cfg.eigen_mode != "scalar1" && cfg.eigen_mode != "scalar2")
        throw ConfigError("eigen mode must be interface, scalar1 or scalar2");

    for_each_known("curve",
                   {{"rays", [&](const Entry& e) { cfg.rays = int(parse_int(e, "rays")); }},
                    {"svg_width", [&](const Entry& e) { cfg.svg_width = int(parse_int(e, "svg_width")); }},
                    {"svg_height",
                     [&](const Entry& e) { cfg.svg_height = int(parse_int(e, "svg_height")); }},
                    {"grid", [&](const Entry& e) { parse_grid_pair(e, cfg.sign_grid_n1, cfg.sign_grid_n2); }}});

    for_each_known(
        "logistic",
        {{"p1", [&](const Entry& e) { cfg.p1 = parse_double(e, "p1"); }},
         {"p2", [&](const Entry& e) { cfg.p2 = parse_double(e, "p2"); }},
         {"lambda1_min", [&](const Entry& e) { cfg.l1_min = parse_double(e, "lambda1_min"); }},
         {"lambda1_max", [&](const Entry& e) { cfg.l1_max = parse_double(e, "lambda1_max"); }},
         {"lambda2_min", [&](const Entry& e) { cfg.l2_min = parse_double(e, "lambda2_min"); }},
         {"lambda2_max", [&](const Entry& e) { cfg.l2_max = parse_double(e, "lambda2_max"); }},
         {"grid", [&](const Entry& e) { parse_grid_pair(e, cfg.grid_n1, cfg.grid_n2); }},
         {"profiles", [&](const Entry& e) { cfg.profile_count = int(parse_int(e, "profiles")); }}});

    for_each_known("verify", {{"trials", [&](const Entry& e) {
                                   cfg.verify_trials = int(parse_int(e, "trials"));
                               }}});

    for (const auto& [name, sec] : secs) {
        (void)sec;
        if (name != "domain" && name != "coupling" && name != "m1" && name != "m2" &&
            name != "c1" && name != "c2" && name != "run" && name != "eigen" && name != "curve" &&
            name != "logistic" && name != "verify")
            throw ConfigError("unknown section [" + name + "]");
    }
    try {
        cfg.domain.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.gamma1 > 0.0) || !(cfg.gamma2 > 0.0))
        throw ConfigError("jump coefficients gamma1, gamma2 must be positive");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace eigencurve
