// sweep.hpp — Parameter sweep engine and figure-reproduction presets.
// Rows are evaluated in a work pool and gathered in deterministic mixed-radix
// order (first axis slowest); per-point failures are flagged in-row and never
// abort a sweep.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqz/model.hpp"

namespace sqz {

inline constexpr const char* kVersion = "0.1.0";

enum class Engine { WeakCoupling, Langevin, Both };

struct SweepAxis {
    std::string name;  // SystemParams key, or "r", "j", "j_ratio"
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
    bool log_scale = false;

    double value(int i) const;
};

struct SweepSpec {
    SystemParams base;
    std::vector<SweepAxis> axes;
    Engine engine = Engine::WeakCoupling;
    std::vector<std::string> metrics;  // empty = engine default set
    double langevin_tol = 1e-8;
    double integrator_rtol = 1e-10;
    long long max_periods = 100'000'000;
    int threads = 1;
};

struct SweepResult {
    std::vector<std::string> provenance;  // '#'-prefixed when written
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::string> flags;  // one per row, empty when clean
};

// Engine-default metric columns (axis columns are always prepended).
std::vector<std::string> default_metrics(Engine e);

SweepSpec load_sweep_spec(const std::string& path);

SweepResult run_sweep(const SweepSpec& spec);

void write_sweep_csv(const std::string& path, const SweepResult& result,
                     bool timestamp = true);

// Figure presets. Each writes one CSV per curve into out_dir and returns the
// file names. gamma_override applies to fig6 only (its caption value is
// anomalously large, so both variants are exposed).
std::vector<std::string> run_preset(const std::string& name,
                                    const std::string& out_dir,
                                    int threads = 1,
                                    std::optional<double> gamma_override = {});

std::vector<std::string> preset_names();

}  // namespace sqz
