#include "vdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace vdg {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

const std::map<std::string, double>& unit_table() {
    static const std::map<std::string, double> units = {
        {"GPa", 1e9},   {"MPa", 1e6},    {"kPa", 1e3},  {"Pa", 1.0},
        {"km", 1e3},    {"m", 1.0},      {"cm", 1e-2},  {"mm", 1e-3},
        {"s", 1.0},     {"ms", 1e-3},    {"us", 1e-6},
        {"kHz", 1e3},   {"Hz", 1.0},
        {"kg/m3", 1.0}, {"kg/m^3", 1.0}, {"g/cm3", 1e3}, {"g/cm^3", 1e3},
    };
    return units;
}

}  // namespace

double parse_quantity(const std::string& text) {
    std::istringstream ss(trim(text));
    double v;
    if (!(ss >> v)) throw ConfigError("not a number: '" + text + "'");
    std::string unit;
    ss >> unit;
    std::string rest;
    if (ss >> rest) throw ConfigError("trailing content in '" + text + "'");
    if (unit.empty()) return v;
    auto it = unit_table().find(unit);
    if (it == unit_table().end()) throw ConfigError("unknown unit '" + unit + "'");
    return v * it->second;
}

KeyValueFile KeyValueFile::parse(const std::string& text) {
    KeyValueFile f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (f.entries_.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        f.entries_[key] = Entry{val, lineno, false};
    }
    return f;
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) > 0; }

double KeyValueFile::number(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    it->second.used = true;
    try {
        return parse_quantity(it->second.raw);
    } catch (const ConfigError& e) {
        throw ConfigError("line " + std::to_string(it->second.line) + ", key '" + key +
                          "': " + e.what());
    }
}

double KeyValueFile::number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
}

int KeyValueFile::integer(const std::string& key) {
    const double v = number(key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9)
        throw ConfigError("key '" + key + "': expected an integer");
    return i;
}

int KeyValueFile::integer(const std::string& key, int fallback) {
    return has(key) ? integer(key) : fallback;
}

bool KeyValueFile::boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = string(key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected a boolean");
}

std::string KeyValueFile::string(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
    it->second.used = true;
    return it->second.raw;
}

std::string KeyValueFile::string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
}

void KeyValueFile::reject_unknown() const {
    std::string bad;
    for (const auto& [k, e] : entries_)
        if (!e.used) bad += "\n  line " + std::to_string(e.line) + ": " + k;
    if (!bad.empty()) throw ConfigError("unknown configuration keys:" + bad);
}

namespace {

MaterialSpec material_from_kv(KeyValueFile& kv, const std::string& prefix) {
    MaterialSpec m;
    m.rho = kv.number(prefix + "rho");
    m.c11 = kv.number(prefix + "c11");
    m.c12 = kv.number(prefix + "c12");
    m.c13 = kv.number(prefix + "c13");
    m.c22 = kv.number(prefix + "c22", m.c11);
    m.c23 = kv.number(prefix + "c23", m.c13);
    m.c33 = kv.number(prefix + "c33");
    m.c55 = kv.number(prefix + "c55");
    m.c44 = kv.number(prefix + "c44", m.c55);
    m.c66 = kv.number(prefix + "c66", m.c55);
    for (int nu = 0; nu < 4; ++nu) {
        const std::string e = prefix + "tau_eps" + std::to_string(nu + 1);
        const std::string s = prefix + "tau_sig" + std::to_string(nu + 1);
        m.tau_eps[nu] = kv.number(e, nu > 0 ? m.tau_eps[nu - 1] : -1.0);
        m.tau_sig[nu] = kv.number(s, nu > 0 ? m.tau_sig[nu - 1] : -1.0);
        if (m.tau_eps[nu] < 0 || m.tau_sig[nu] < 0)
            throw ConfigError("material: missing " + e + " / " + s);
    }
    m.validate();
    return m;
}

std::vector<Eigen::Vector2d> parse_receivers(const std::string& text) {
    std::vector<Eigen::Vector2d> out;
    std::istringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::istringstream ps(part);
        double x, z;
        if (!(ps >> x >> z)) throw ConfigError("receivers: expected 'x z; x z; ...'");
        out.emplace_back(x, z);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream ss(text);
    int v;
    while (ss >> v) out.push_back(v);
    if (out.empty()) throw ConfigError("expected a list of integers");
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    KeyValueFile kv = KeyValueFile::parse(text);
    RunConfig c;

    c.material_name = kv.string("material", "");
    if (!c.material_name.empty() && c.material_name != "inline") {
        c.material = MaterialSpec::preset(c.material_name);
    } else {
        c.material = material_from_kv(kv, "material.");
        if (c.material_name.empty()) c.material_name = "inline";
    }
    c.elastic_limit = kv.boolean("elastic_limit", false);

    c.x0 = kv.number("domain.x0", 0.0);
    c.x1 = kv.number("domain.x1", 1.0);
    c.z0 = kv.number("domain.z0", 0.0);
    c.z1 = kv.number("domain.z1", 1.0);
    c.nx = kv.integer("mesh.nx", 1);
    c.nz = kv.integer("mesh.nz", 1);
    c.mesh_file = kv.string("mesh.file", "");
    if (c.nx < 1 || c.nz < 1) throw ConfigError("mesh.nx/nz must be >= 1");

    c.degree = kv.integer("degree", 3);
    if (c.degree < 1 || c.degree > ReferenceOperators::max_degree)
        throw ConfigError("degree out of range [1, 8]");
    const double alpha_both = kv.number("alpha", 0.5);
    c.alpha_sigma = kv.number("alpha_sigma", alpha_both);
    c.alpha_v = kv.number("alpha_v", alpha_both);
    if (c.alpha_sigma < 0 || c.alpha_v < 0) throw ConfigError("penalty parameters must be >= 0");
    c.cfl = kv.number("cfl", 0.5);
    if (!(c.cfl > 0)) throw ConfigError("cfl must be positive");
    c.t_final = kv.number("t_final", 1.0);
    if (!(c.t_final > 0)) throw ConfigError("t_final must be positive");

    const std::string bc_all = kv.string("bc", "absorbing");
    c.bc_left = boundary_tag_from_string(kv.string("bc.left", bc_all));
    c.bc_right = boundary_tag_from_string(kv.string("bc.right", bc_all));
    c.bc_bottom = boundary_tag_from_string(kv.string("bc.bottom", bc_all));
    c.bc_top = boundary_tag_from_string(kv.string("bc.top", bc_all));

    if (kv.has("source.kind") || kv.has("source.f0")) {
        SourceSpec s;
        const std::string kind = kv.string("source.kind", "ricker");
        if (kind == "ricker")
            s.kind = WaveletKind::ricker;
        else if (kind == "gauss_cosine")
            s.kind = WaveletKind::gauss_cosine;
        else
            throw ConfigError("source.kind must be ricker or gauss_cosine");
        s.f0 = kv.number("source.f0");
        if (!(s.f0 > 0)) throw ConfigError("source.f0 must be positive");
        s.t0 = kv.number("source.t0", 1.2 / s.f0);
        s.x = kv.number("source.x", 0.0);
        s.z = kv.number("source.z", 0.0);
        s.amplitude = kv.number("source.amplitude", 1.0);
        const std::string targets = kv.string("source.targets", "s11 s33");
        std::istringstream ts(targets);
        std::string tok;
        while (ts >> tok) {
            double weight = 1.0;
            const auto colon = tok.find(':');
            if (colon != std::string::npos) {
                weight = std::stod(tok.substr(colon + 1));
                tok = tok.substr(0, colon);
            }
            if (tok == "s11")
                s.weights(S11) += weight;
            else if (tok == "s33")
                s.weights(S33) += weight;
            else if (tok == "s13")
                s.weights(S13) += weight;
            else if (tok == "v1")
                s.weights(V1) += weight;
            else if (tok == "v3")
                s.weights(V3) += weight;
            else
                throw ConfigError("source.targets: unknown field '" + tok + "'");
        }
        c.source = s;
    }

    if (kv.has("receivers")) c.receivers = parse_receivers(kv.string("receivers"));
    c.record_interval = kv.number("record_interval", 0.0);
    c.snapshot_every = kv.integer("snapshot_every", 0);
    c.nan_check_interval = kv.integer("nan_check_interval", 50);
    c.threads = kv.integer("threads", 1);
    c.seed = static_cast<unsigned long long>(kv.number("seed", 0.0));

    if (kv.has("convergence.degrees")) c.conv_degrees = parse_int_list(kv.string("convergence.degrees"));
    if (kv.has("convergence.resolutions"))
        c.conv_resolutions = parse_int_list(kv.string("convergence.resolutions"));
    c.kx = kv.number("plane_wave.kx", 2.0 * M_PI);
    c.kz = kv.number("plane_wave.kz", 2.0 * M_PI);

    c.greens_f0 = kv.number("greens.f0", 45.0);
    c.greens_t0 = kv.number("greens.t0", 0.0);
    c.receiver_x = kv.number("greens.receiver_x", 250.0);
    c.receiver_z = kv.number("greens.receiver_z", 250.0);
    const std::string vm = kv.string("greens.velocity_model", "consistent");
    if (vm == "consistent")
        c.velocity_model = VelocityModel::consistent;
    else if (vm == "printed")
        c.velocity_model = VelocityModel::printed;
    else if (vm == "lame")
        c.velocity_model = VelocityModel::lame;
    else
        throw ConfigError("greens.velocity_model must be consistent, printed or lame");
    c.isotropize = kv.boolean("greens.isotropize", true);

    kv.reject_unknown();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Mesh RunConfig::build_mesh() const {
    if (!mesh_file.empty()) {
        std::ifstream in(mesh_file);
        if (!in) throw ConfigError("cannot open mesh file: " + mesh_file);
        return read_mesh_text(in);
    }
    return uniform_tri_mesh(nx, nz, x0, x1, z0, z1, bc_left, bc_right, bc_bottom, bc_top);
}

std::vector<ViscoCoefficients> RunConfig::build_materials() const {
    MaterialSpec m = elastic_limit ? material.elastic_limit() : material;
    return {derive_visco_coefficients(m)};
}

std::string config_hash(const std::string& text) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream ss;
    ss << std::hex << h;
    return ss.str();
}

}  // namespace vdg
