// io.hpp — Flat key/value parameter files and CSV output helpers.

#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sqz/classical.hpp"
#include "sqz/model.hpp"

namespace sqz {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "key = value" (or "key value") lines, '#' comments. Unknown keys
// are rejected. Accepted keys: omega, kappa_c, kappa_1, kappa_2, delta_1,
// delta_2, j_1, j_2, g_minus, r, gamma, n_th, plus the symmetric shortcuts
// kappa and j. Absolute inputs (omega != 1) are normalized to omega = 1.
// Missing auxiliary keys default to the symmetric setting.
SystemParams load_params(const std::string& path);
SystemParams params_from_map(const std::map<std::string, double>& kv);

void write_params(std::ostream& os, const SystemParams& p);
void save_params(const std::string& path, const SystemParams& p);

// Drive-spec file: alpha_plus_re/_im, alpha_minus_re/_im, omega_c, omega_1,
// omega_2, g0 plus the SystemParams keys above (g_minus/r ignored; couplings
// come from the drive).
struct DriveFile {
    DriveSpec drive;
    SystemParams params;
};
DriveFile load_drive_spec(const std::string& path);

// ---------------------------------------------------------------------------
// CSV with '#'-prefixed provenance lines. Numbers are printed with %.12g so
// identical inputs give byte-identical files; empty cells mark metrics that
// were not computable for a row.

struct CsvWriter {
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void provenance(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::optional<double>>& values,
             const std::string& trailing_text = "");
    void text_row(const std::vector<std::string>& cells);

    static std::string format(double v);

   private:
    std::ostream& os_;
    std::size_t n_columns_ = 0;
};

std::map<std::string, double> read_key_values(const std::string& path);

}  // namespace sqz
