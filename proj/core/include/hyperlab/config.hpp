// config.hpp
// Flat key = value run configuration with dotted sections; '#' comments.
// The documented key list lives in the README.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperlab/fields.hpp"
#include "hyperlab/slab.hpp"
#include "hyperlab/system.hpp"

namespace hyperlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class KeyValueFile {
public:
    static KeyValueFile parse(const std::string& text);
    static KeyValueFile load(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_doubles(const std::string& key,
                                    std::vector<double> fallback) const;
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

struct RunConfig {
    std::string run_id = "run";
    SystemCoefficients coeffs = SystemCoefficients::canonical();
    // grid
    double dx = 0.02;
    double cfl_factor = 0.45;
    double extent = 12.0;
    double t_end = 12.0;
    // data
    std::string profile = "bump4";
    double epsilon = 0.01;
    double support_radius = 1.0;
    // diagnostics
    std::vector<double> s_list{3, 4, 5, 6, 7, 8};
    int max_order = 2;
    double delta = 0.1;
    double c1_over_c0 = 10.0;
    std::vector<double> energy_law_s; // extra order-0 law slices
    // misc
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency

    static RunConfig from_file(const std::string& path);
    static RunConfig from_kv(const KeyValueFile& kv);

    // Cross-module invariants: null P, CFL bound, delta range, support in
    // the unit disc, C1 > C0. Throws ConfigError naming the failed check.
    void validate() const;

    GridSpec grid() const { return GridSpec::make(dx, extent, cfl_factor); }
    CauchyData cauchy_data() const { return make_cauchy_data(profile, epsilon, support_radius); }
};

} // namespace hyperlab
