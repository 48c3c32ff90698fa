#include "hyperlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hyperlab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        kv.entries_[key] = value;
    }
    return kv;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool KeyValueFile::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueFile::get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (trim(it->second.substr(pos)).empty()) return v;
    } catch (...) {
    }
    throw ConfigError("config key '" + key + "': expected a number, got '" + it->second + "'");
}

std::uint64_t KeyValueFile::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    try {
        return std::stoull(it->second);
    } catch (...) {
        throw ConfigError("config key '" + key + "': expected an unsigned integer");
    }
}

std::vector<double> KeyValueFile::get_doubles(const std::string& key,
                                              std::vector<double> fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<double> out;
    std::istringstream in(it->second);
    double v;
    while (in >> v) out.push_back(v);
    if (out.empty()) throw ConfigError("config key '" + key + "': expected numbers");
    return out;
}

namespace {

QuadraticForm parse_form(const KeyValueFile& kv, const std::string& key,
                         const QuadraticForm& fallback) {
    if (!kv.has(key)) return fallback;
    const std::string raw = kv.get_string(key, "");
    if (raw == "minkowski") return QuadraticForm::minkowski();
    if (raw == "zero") return QuadraticForm::zero();
    std::istringstream in(raw);
    Mat3 m{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!(in >> m[a][b]))
                throw ConfigError("config key '" + key +
                                  "': expected 'minkowski', 'zero' or 9 row-major entries");
    return QuadraticForm::from_entries(m);
}

} // namespace

RunConfig RunConfig::from_kv(const KeyValueFile& kv) {
    RunConfig c;
    c.run_id = kv.get_string("run.id", c.run_id);
    auto A = kv.get_doubles("coeffs.A", {c.coeffs.A[0], c.coeffs.A[1], c.coeffs.A[2]});
    if (A.size() != 3) throw ConfigError("config key 'coeffs.A': expected 3 numbers");
    c.coeffs.A = {A[0], A[1], A[2]};
    c.coeffs.R = kv.get_double("coeffs.R", c.coeffs.R);
    c.coeffs.Q = parse_form(kv, "coeffs.Q", c.coeffs.Q);
    c.coeffs.P = parse_form(kv, "coeffs.P", c.coeffs.P);
    c.dx = kv.get_double("grid.dx", c.dx);
    c.cfl_factor = kv.get_double("grid.cfl_factor", c.cfl_factor);
    c.extent = kv.get_double("grid.extent", c.extent);
    c.t_end = kv.get_double("grid.t_end", c.t_end);
    c.profile = kv.get_string("data.profile", c.profile);
    c.epsilon = kv.get_double("data.epsilon", c.epsilon);
    c.support_radius = kv.get_double("data.support_radius", c.support_radius);
    c.s_list = kv.get_doubles("diagnostics.s_list", c.s_list);
    c.max_order = static_cast<int>(kv.get_double("diagnostics.max_order", c.max_order));
    c.delta = kv.get_double("diagnostics.delta", c.delta);
    c.c1_over_c0 = kv.get_double("diagnostics.c1_over_c0", c.c1_over_c0);
    c.energy_law_s = kv.get_doubles("diagnostics.energy_law_s", c.energy_law_s);
    c.seed = kv.get_u64("seed", c.seed);
    c.threads = static_cast<int>(kv.get_double("threads", c.threads));
    return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_kv(KeyValueFile::load(path));
}

void RunConfig::validate() const {
    if (!is_null_form(coeffs.P))
        throw ConfigError(
            "coeffs.P: fails the null-form check (P^{ab} xi_a xi_b must vanish for every "
            "null covector xi with xi_0^2 = xi_1^2 + xi_2^2)");
    if (!(cfl_factor > 0.0) || cfl_factor > 1.0 / std::sqrt(2.0) + 1e-15)
        throw ConfigError("grid.cfl_factor: CFL stability requires 0 < cfl <= 1/sqrt(2)");
    if (!(dx > 0.0)) throw ConfigError("grid.dx: must be positive");
    if (!(t_end > 2.0)) throw ConfigError("grid.t_end: must exceed the initial time 2");
    if (!(extent > 0.0)) throw ConfigError("grid.extent: must be positive");
    if (!(support_radius > 0.0) || support_radius > 1.0)
        throw ConfigError("data.support_radius: initial data must be supported in the unit disc");
    if (!(epsilon >= 0.0)) throw ConfigError("data.epsilon: must be nonnegative");
    if (!(delta > 0.0) || delta > 0.1)
        throw ConfigError("diagnostics.delta: must lie in (0, 1/10]");
    if (!(c1_over_c0 > 1.0))
        throw ConfigError("diagnostics.c1_over_c0: the bootstrap needs C1 > C0");
    if (max_order < 0 || max_order > 2)
        throw ConfigError("diagnostics.max_order: vector-field orders above 2 are not exercised");
    for (double s : s_list)
        if (!(s >= 2.0)) throw ConfigError("diagnostics.s_list: slices need s >= 2");
}

} // namespace hyperlab
