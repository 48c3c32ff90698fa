// verify.hpp
// Named verification suites over the frame algebra, the characteristic
// machinery and the disc-intersection quadrature. Shared by the
// command-line verify subcommands and the acceptance tests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperlab {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;   // the measured quantity the check gates on
    double limit = 0.0;   // the gate
    std::string detail;
};

struct CheckSuite {
    std::string name;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

CheckSuite verify_frame_suite(std::uint64_t seed);

CheckSuite verify_characteristics_suite(std::uint64_t seed);

struct KirchhoffVerifyOptions {
    std::uint64_t seed = 1;
    int n_configs = 100;              // random (lambda, t, r) triples
    std::uint64_t mc_samples = 10'000'000;
    double mc_rel_tol = 1e-3;
    double sweep_t = 100.0;
    std::vector<double> sweep_fracs{0.1, 0.05, 0.02, 0.01, 0.005};
};

CheckSuite verify_kirchhoff_suite(const KirchhoffVerifyOptions& opts = {});

// Near-cone sweep rows for CSV export: J against (t-r)/t.
struct KirchhoffSweepRow {
    double t = 0.0, r = 0.0;
    double tmr_over_t = 0.0;
    double J = 0.0;
    double J_over_sqrt = 0.0; // J / sqrt((t-r)/t)
};

std::vector<KirchhoffSweepRow> kirchhoff_sweep(double t, const std::vector<double>& fracs);

} // namespace hyperlab
