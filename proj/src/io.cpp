#include "sqz/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace sqz {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

const std::set<std::string> kParamKeys = {
    "omega",  "kappa_c", "kappa_1", "kappa_2", "delta_1", "delta_2", "j_1",
    "j_2",    "g_minus", "r",       "gamma",   "n_th",    "kappa",   "j"};

const std::set<std::string> kDriveKeys = {
    "alpha_plus_re", "alpha_plus_im", "alpha_minus_re", "alpha_minus_im",
    "omega_c",       "omega_1",       "omega_2",        "g0"};

}  // namespace

std::map<std::string, double> read_key_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string key, value;
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            std::istringstream ss(line);
            ss >> key >> value;
        }
        if (key.empty() || value.empty())
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        double v = 0.0;
        try {
            std::size_t pos = 0;
            v = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument(value);
        } catch (const std::invalid_argument&) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": not a number: '" + value + "'");
        } catch (const std::out_of_range&) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": out of range: '" + value + "'");
        }
        if (kv.count(key))
            throw ValidationError(path + ": duplicate key '" + key + "'");
        kv[key] = v;
    }
    return kv;
}

SystemParams params_from_map(const std::map<std::string, double>& kv) {
    for (const auto& [key, _] : kv)
        if (!kParamKeys.count(key))
            throw ValidationError("unknown parameter key '" + key + "'");

    auto get = [&](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };
    auto has = [&](const std::string& key) { return kv.count(key) > 0; };

    const double omega = get("omega", 1.0);
    if (!(omega > 0.0)) throw ValidationError("omega must be > 0");

    SystemParams p;
    p.omega_m = 1.0;
    if (!has("kappa_c")) throw ValidationError("missing required key 'kappa_c'");
    if (!has("g_minus")) throw ValidationError("missing required key 'g_minus'");
    if (!has("gamma")) throw ValidationError("missing required key 'gamma'");
    p.kappa_c = get("kappa_c", 0.0) / omega;
    // symmetric-setting defaults for missing auxiliary keys
    const double kappa_sym = get("kappa", p.kappa_c * omega);
    const double j_sym = get("j", 0.0);
    p.kappa_1 = get("kappa_1", kappa_sym) / omega;
    p.kappa_2 = get("kappa_2", kappa_sym) / omega;
    p.delta_1 = get("delta_1", 2.0 * omega) / omega;
    p.delta_2 = get("delta_2", -2.0 * omega) / omega;
    p.j_1 = get("j_1", j_sym) / omega;
    p.j_2 = get("j_2", j_sym) / omega;
    p.g_minus = get("g_minus", 0.0) / omega;
    p.g_plus = get("r", 0.0) * p.g_minus;
    p.gamma_m = get("gamma", 0.0) / omega;
    p.n_th = get("n_th", 0.0);

    const auto diags = validate(p);
    if (has_error(diags)) {
        std::ostringstream msg;
        msg << "invalid parameters:";
        for (const auto& d : diags)
            if (d.severity == Severity::Error) msg << " " << d.message << ";";
        throw ValidationError(msg.str());
    }
    return p;
}

SystemParams load_params(const std::string& path) {
    return params_from_map(read_key_values(path));
}

void write_params(std::ostream& os, const SystemParams& p) {
    auto put = [&](const char* key, double v) {
        os << key << " = " << CsvWriter::format(v) << "\n";
    };
    put("omega", p.omega_m);
    put("kappa_c", p.kappa_c);
    put("kappa_1", p.kappa_1);
    put("kappa_2", p.kappa_2);
    put("delta_1", p.delta_1);
    put("delta_2", p.delta_2);
    put("j_1", p.j_1);
    put("j_2", p.j_2);
    put("g_minus", p.g_minus);
    put("r", p.drive_ratio());
    put("gamma", p.gamma_m);
    put("n_th", p.n_th);
}

void save_params(const std::string& path, const SystemParams& p) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    write_params(out, p);
}

DriveFile load_drive_spec(const std::string& path) {
    const auto kv = read_key_values(path);
    std::map<std::string, double> param_kv;
    std::map<std::string, double> drive_kv;
    for (const auto& [key, value] : kv) {
        if (kDriveKeys.count(key))
            drive_kv[key] = value;
        else if (kParamKeys.count(key) && key != "g_minus" && key != "r")
            param_kv[key] = value;
        else
            throw ValidationError("unknown drive-spec key '" + key + "'");
    }
    param_kv["g_minus"] = 0.0;  // placeholder; couplings come from the drive
    DriveFile df;
    df.params = params_from_map(param_kv);
    auto get = [&](const std::string& key, double fallback) {
        const auto it = drive_kv.find(key);
        return it == drive_kv.end() ? fallback : it->second;
    };
    if (!drive_kv.count("g0")) throw ValidationError("missing drive key 'g0'");
    if (!drive_kv.count("omega_c")) throw ValidationError("missing drive key 'omega_c'");
    df.drive.alpha_plus = {get("alpha_plus_re", 0.0), get("alpha_plus_im", 0.0)};
    df.drive.alpha_minus = {get("alpha_minus_re", 0.0), get("alpha_minus_im", 0.0)};
    df.drive.omega_c = get("omega_c", 0.0);
    df.drive.omega_1 = get("omega_1", df.drive.omega_c - df.params.delta_1);
    df.drive.omega_2 = get("omega_2", df.drive.omega_c - df.params.delta_2);
    df.drive.g0 = get("g0", 0.0);
    return df;
}

// ---------------------------------------------------------------------------

std::string CsvWriter::format(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void CsvWriter::provenance(const std::string& line) {
    os_ << "# " << line << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    n_columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        os_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::optional<double>>& values,
                    const std::string& trailing_text) {
    const bool has_flag_column = n_columns_ == values.size() + 1;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) os_ << format(*values[i]);
        os_ << (i + 1 < values.size() ? "," : "");
    }
    if (has_flag_column) os_ << "," << trailing_text;
    os_ << "\n";
}

void CsvWriter::text_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        os_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace sqz
