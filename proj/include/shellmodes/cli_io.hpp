#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "shellmodes/asymptotics.hpp"
#include "shellmodes/dispersion.hpp"
#include "shellmodes/error.hpp"
#include "shellmodes/geometry.hpp"
#include "shellmodes/operators.hpp"

namespace shellmodes {

/// Everything one experiment needs. Thicknesses are entered as h = 2 eps
/// and stored as eps; the conversion happens only in parse_config.
struct ExperimentConfig {
    MeridianProfile profile = MeridianProfile::cylinder(1.0, 2.0);
    MaterialParams material;
    OperatorKind op = OperatorKind::Lame;
    std::vector<double> eps;
    MeshSpec mesh;
    int p = 6;
    KPolicy k_policy;
    EigenOptions eigen;
    std::string output_dir = ".";

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
        return a.profile == b.profile && a.material == b.material && a.op == b.op && a.eps == b.eps && a.mesh == b.mesh &&
               a.p == b.p && a.k_policy == b.k_policy && a.eigen.count == b.eigen.count && a.eigen.tol == b.eigen.tol &&
               a.output_dir == b.output_dir;
    }
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void config_fail(const std::string& field, const std::string& what) {
    throw ShellError(ErrorCode::ConfigError, "field '" + field + "': " + what);
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) config_fail(path + key, "missing");
    return j.at(key);
}

inline double get_number(const json& j, const std::string& key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) config_fail(path + key, "expected a number");
    return v.get<double>();
}

inline int get_int(const json& j, const std::string& key, const std::string& path, int fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) config_fail(path + key, "expected an integer");
    return v.get<int>();
}

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

}  // namespace detail

inline MeridianProfile parse_profile(const nlohmann::json& j) {
    using detail::get_number;
    if (!j.is_object()) detail::config_fail("profile", "expected an object");
    const auto& kind_j = detail::require(j, "kind", "profile.");
    if (!kind_j.is_string()) detail::config_fail("profile.kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();
    try {
        if (kind == "cylinder") return MeridianProfile::cylinder(get_number(j, "R", "profile."), get_number(j, "L", "profile."));
        if (kind == "ring_plate")
            return MeridianProfile::ring_plate(get_number(j, "R1", "profile."), get_number(j, "R2", "profile."));
        if (kind == "polynomial") {
            const auto& cj = detail::require(j, "coefficients", "profile.");
            const auto& ij = detail::require(j, "interval", "profile.");
            if (!cj.is_array() || cj.empty()) detail::config_fail("profile.coefficients", "expected a non-empty array");
            std::vector<double> coeffs;
            for (const auto& c : cj) {
                if (!c.is_number()) detail::config_fail("profile.coefficients", "entries must be numbers");
                coeffs.push_back(c.get<double>());
            }
            if (!ij.is_array() || ij.size() != 2 || !ij[0].is_number() || !ij[1].is_number())
                detail::config_fail("profile.interval", "expected [z_min, z_max]");
            return MeridianProfile::polynomial(std::move(coeffs), ij[0].get<double>(), ij[1].get<double>());
        }
    } catch (const ShellError& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        detail::config_fail("profile", e.what());
    }
    detail::config_fail("profile.kind", "unknown kind '" + kind + "' (cylinder, ring_plate, polynomial)");
}

inline nlohmann::json profile_to_json(const MeridianProfile& p) {
    return std::visit(
        [](const auto& k) -> nlohmann::json {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, CylinderSpec>) return {{"kind", "cylinder"}, {"R", k.R}, {"L", k.L}};
            else if constexpr (std::is_same_v<T, RingPlateSpec>) return {{"kind", "ring_plate"}, {"R1", k.R1}, {"R2", k.R2}};
            else return {{"kind", "polynomial"}, {"coefficients", k.f.coefficients()}, {"interval", {k.z_min, k.z_max}}};
        },
        p.kind());
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    using detail::get_int;
    using detail::get_number;
    if (!j.is_object()) detail::config_fail("<root>", "expected an object");
    ExperimentConfig c;
    c.profile = parse_profile(detail::require(j, "profile", ""));

    if (j.contains("material")) {
        const auto& m = j.at("material");
        c.material = {get_number(m, "E", "material."), get_number(m, "nu", "material."), get_number(m, "rho", "material.")};
        try {
            c.material.validate();
        } catch (const ShellError& e) {
            detail::config_fail("material", e.what());
        }
    }

    if (j.contains("operator")) {
        const auto& o = j.at("operator");
        if (!o.is_string()) detail::config_fail("operator", "expected \"laplace\" or \"lame\"");
        const std::string s = o.get<std::string>();
        if (s == "laplace") c.op = OperatorKind::Laplace;
        else if (s == "lame") c.op = OperatorKind::Lame;
        else detail::config_fail("operator", "unknown operator '" + s + "'");
    }

    if (j.contains("thickness")) {
        const auto& t = j.at("thickness");
        if (!t.is_array()) detail::config_fail("thickness", "expected an array of h values");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string f = "thickness[" + std::to_string(i) + "]";
            if (!t[i].is_number()) detail::config_fail(f, "expected a number");
            const double eps = 0.5 * t[i].get<double>();
            try {
                c.profile.check_thickness(eps);
            } catch (const ShellError& e) {
                detail::config_fail(f, e.what());
            }
            c.eps.push_back(eps);
        }
    }

    if (j.contains("mesh")) {
        const auto& m = j.at("mesh");
        c.mesh.n_thick = get_int(m, "n_thick", "mesh.", c.mesh.n_thick);
        c.mesh.n_merid = get_int(m, "n_merid", "mesh.", c.mesh.n_merid);
        c.mesh.geo_degree = get_int(m, "geo_degree", "mesh.", c.mesh.geo_degree);
        if (m.contains("graded")) {
            if (!m.at("graded").is_boolean()) detail::config_fail("mesh.graded", "expected a boolean");
            c.mesh.graded = m.at("graded").get<bool>();
        }
        if (c.mesh.n_thick < 1 || c.mesh.n_merid < 1) detail::config_fail("mesh", "element counts must be >= 1");
        if (c.mesh.geo_degree < 1 || c.mesh.geo_degree > 3) detail::config_fail("mesh.geo_degree", "must be 1, 2 or 3");
    }

    c.p = get_int(j, "p", "", c.p);
    if (c.p < 1) detail::config_fail("p", "interpolation degree must be >= 1");

    if (j.contains("k_policy")) {
        const auto& k = j.at("k_policy");
        c.k_policy.window = get_int(k, "window", "k_policy.", c.k_policy.window);
        c.k_policy.cap = get_int(k, "cap", "k_policy.", c.k_policy.cap);
        if (c.k_policy.window < 1 || c.k_policy.cap < 0) detail::config_fail("k_policy", "window >= 1 and cap >= 0 required");
    }

    if (j.contains("eigen")) {
        const auto& e = j.at("eigen");
        c.eigen.count = get_int(e, "m", "eigen.", c.eigen.count);
        if (e.contains("tol")) c.eigen.tol = get_number(e, "tol", "eigen.");
        if (c.eigen.count < 1 || !(c.eigen.tol > 0.0)) detail::config_fail("eigen", "m >= 1 and tol > 0 required");
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (o.contains("dir")) {
            if (!o.at("dir").is_string()) detail::config_fail("output.dir", "expected a string");
            c.output_dir = o.at("dir").get<std::string>();
        }
    }
    return c;
}

/// Parses config text; JSON syntax errors report the line and column.
inline ExperimentConfig parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ShellError(ErrorCode::ConfigError,
                         "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    return parse_config(j);
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ShellError(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json thickness = nlohmann::json::array();
    for (double e : c.eps) thickness.push_back(2.0 * e);
    return {
        {"profile", profile_to_json(c.profile)},
        {"material", {{"E", c.material.E}, {"nu", c.material.nu}, {"rho", c.material.rho}}},
        {"operator", to_string(c.op)},
        {"thickness", thickness},
        {"mesh",
         {{"n_thick", c.mesh.n_thick}, {"n_merid", c.mesh.n_merid}, {"geo_degree", c.mesh.geo_degree}, {"graded", c.mesh.graded}}},
        {"p", c.p},
        {"k_policy", {{"window", c.k_policy.window}, {"cap", c.k_policy.cap}}},
        {"eigen", {{"m", c.eigen.count}, {"tol", c.eigen.tol}}},
        {"output", {{"dir", c.output_dir}}},
    };
}

inline std::string print_config(const ExperimentConfig& c) { return config_to_json(c).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reports and CSV records

inline std::string classify_report(const ExperimentConfig& cfg) {
    const ShellClass cls = classify(cfg.profile, cfg.material);
    const double er = cfg.material.stiffness_ratio();
    std::ostringstream os;
    os << to_string(cls.tag);
    if (!cls.z0.empty()) {
        // Mirror-symmetric minimizers print as +-z.
        const bool mirrored = cls.z0.size() == 2 && std::abs(cls.z0[0] + cls.z0[1]) <= 1e-12 * std::abs(cls.z0[1]);
        char buf[64];
        if (mirrored) {
            std::snprintf(buf, sizeof buf, ", z0=±%.6f", std::abs(cls.z0[1]));
            os << buf;
        } else {
            os << ", z0=";
            for (std::size_t i = 0; i < cls.z0.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s%.6f", i ? "," : "", cls.z0[i]);
                os << buf;
            }
        }
        std::snprintf(buf, sizeof buf, ", H0 min %.6f E/rho", cls.h0_min / er);
        os << buf;
    }
    try {
        const double lim = membrane_limit(cls);
        char buf[64];
        if (lim == 0.0) std::snprintf(buf, sizeof buf, ", membrane limit 0");
        else std::snprintf(buf, sizeof buf, ", membrane limit %.6f E/rho", lim / er);
        os << buf;
    } catch (const ShellError&) {
        os << ", membrane limit n/a";
    }
    os << '\n';
    return os.str();
}

/// Structured prediction record; coefficients given raw and normalized by E/rho.
inline nlohmann::json prediction_record(const AsymptoticPrediction& pr, const MaterialParams& m) {
    const double er = m.stiffness_ratio();
    const auto num = [](double v) -> nlohmann::json { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    nlohmann::json j;
    j["class"] = to_string(pr.shell_class.tag);
    j["z0"] = pr.shell_class.z0;
    j["E_over_rho"] = er;
    j["coefficients_available"] = pr.coefficients_available;
    j["k_law"] = pr.k_law ? nlohmann::json{{"gamma", pr.k_law->gamma}, {"beta", pr.k_law->beta}} : nlohmann::json(nullptr);
    j["lambda_law"] = {{"a0", num(pr.lambda_law.a0)},
                       {"a1", num(pr.lambda_law.a1)},
                       {"delta", num(pr.lambda_law.delta)},
                       {"a0_over_E_rho", num(pr.lambda_law.a0 / er)},
                       {"a1_over_E_rho", num(pr.lambda_law.a1 / er)}};
    j["constants"] = {{"mu_bilap", num(pr.mu_bilap)}, {"z_airy", num(pr.z_airy)}};
    j["intermediates"] = {{"g_over_E_rho", num(pr.g0 / er)}, {"b_over_E_rho", num(pr.b / er)}, {"c_over_E_rho", num(pr.c / er)}};
    j["k_bending"] = pr.k_bending ? nlohmann::json(*pr.k_bending) : nlohmann::json(nullptr);
    return j;
}

inline const char* to_string(StopReason s) { return s == StopReason::RiseDetected ? "rise_detected" : "kmax_hit"; }

/// Columns k, lambda, lambda_over_E_rho, residual; a trailing comment line
/// carries the argmin.
inline void write_dispersion_csv(std::ostream& os, const DispersionCurve& c, const MaterialParams& m) {
    const double er = m.stiffness_ratio();
    os << "k,lambda,lambda_over_E_rho,residual\n";
    for (const auto& e : c.entries)
        os << e.k << ',' << detail::format_double(e.lambda) << ',' << detail::format_double(e.lambda / er) << ','
           << detail::format_double(e.residual) << '\n';
    os << "# argmin k=" << c.argmin_k << " lambda=" << detail::format_double(c.lambda_min)
       << " lambda_over_E_rho=" << detail::format_double(c.lambda_min / er) << " stop=" << to_string(c.stop_reason)
       << '\n';
}

inline const char* sweep_header() {
    return "h,eps,k_star,lambda,lambda_over_E_rho,lambda_pred,k_pred,residual\n";
}

/// One summary row; prediction columns are nan when no law is available.
inline void write_sweep_row(std::ostream& os, const SweepRow& row, const std::optional<AsymptoticPrediction>& pr,
                            const MaterialParams& m) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double lam_pred = nan, k_pred = nan, resid = nan;
    if (pr && pr->coefficients_available) {
        lam_pred = pr->lambda_law(row.eps);
        resid = row.mode.lambda - lam_pred;
        if (pr->k_law) k_pred = pr->k_law->gamma * std::pow(row.eps, -pr->k_law->beta);
    }
    os << detail::format_double(2.0 * row.eps) << ',' << detail::format_double(row.eps) << ',' << row.mode.k << ','
       << detail::format_double(row.mode.lambda) << ',' << detail::format_double(row.mode.lambda / m.stiffness_ratio())
       << ',' << detail::format_double(lam_pred) << ',' << detail::format_double(k_pred) << ','
       << detail::format_double(resid) << '\n';
}

// ---------------------------------------------------------------------------
// Commands. Each returns the process exit code.

enum ExitCode { ExitOk = 0, ExitConfig = 2, ExitNumerical = 3 };

inline int exit_code_for(const ShellError& e) { return e.code() == ErrorCode::ConfigError ? ExitConfig : ExitNumerical; }

inline std::string dispersion_file_name(double h) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "dispersion_h%.6g.csv", h);
    return buf;
}

inline std::optional<AsymptoticPrediction> try_predict(const ExperimentConfig& cfg) {
    if (cfg.op != OperatorKind::Lame) return std::nullopt;
    try {
        return predict(cfg.profile, cfg.material);
    } catch (const ShellError& e) {
        if (e.code() == ErrorCode::UnsupportedClass) return std::nullopt;
        throw;
    }
}

inline void cmd_classify(const ExperimentConfig& cfg, std::ostream& out) { out << classify_report(cfg); }

inline void cmd_predict(const ExperimentConfig& cfg, std::ostream& out) {
    out << prediction_record(predict(cfg.profile, cfg.material), cfg.material).dump(2) << '\n';
}

inline DispersionCurve cmd_dispersion(const ExperimentConfig& cfg, double h, std::ostream& out) {
    if (!(h > 0.0)) throw ShellError(ErrorCode::ConfigError, "field 'h': thickness must be positive");
    const double eps = 0.5 * h;
    try {
        cfg.profile.check_thickness(eps);
    } catch (const ShellError& e) {
        throw ShellError(ErrorCode::ConfigError, std::string("field 'h': ") + e.what());
    }
    try {
        const DispersionCurve c = sweep_k(cfg.profile, cfg.material, cfg.op, eps, cfg.mesh, cfg.p, cfg.k_policy, cfg.eigen);
        write_dispersion_csv(out, c, cfg.material);
        return c;
    } catch (const KmaxExceeded& e) {
        write_dispersion_csv(out, e.partial(), cfg.material);
        throw;
    }
}

/// Writes sweep_summary.csv, prediction.json (when a law exists) and one
/// dispersion CSV per thickness into dir. Rows are flushed as they finish.
inline std::vector<SweepRow> cmd_sweep(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
    if (cfg.eps.empty()) throw ShellError(ErrorCode::ConfigError, "field 'thickness': empty thickness list");
    std::filesystem::create_directories(dir);
    const auto pr = try_predict(cfg);
    if (pr) {
        std::ofstream pj(dir / "prediction.json");
        pj << prediction_record(*pr, cfg.material).dump(2) << '\n';
    }
    std::ofstream summary(dir / "sweep_summary.csv");
    if (pr) summary << "# prediction " << prediction_record(*pr, cfg.material).dump() << '\n';
    summary << sweep_header() << std::flush;

    std::vector<double> eps = cfg.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
    std::vector<SweepRow> rows;
    for (double e : eps) {
        std::ofstream dc(dir / dispersion_file_name(2.0 * e));
        DispersionCurve curve;
        try {
            curve = sweep_k(cfg.profile, cfg.material, cfg.op, e, cfg.mesh, cfg.p, cfg.k_policy, cfg.eigen);
        } catch (const KmaxExceeded& ex) {
            write_dispersion_csv(dc, ex.partial(), cfg.material);
            throw;
        }
        write_dispersion_csv(dc, curve, cfg.material);
        SweepRow row{e, first_mode(curve), std::move(curve)};
        write_sweep_row(summary, row, pr, cfg.material);
        summary.flush();
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void cmd_constants(std::ostream& out) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "beam_root %.12f\nmu_bilap %.10f\nz_airy %.10f\n", beam_characteristic_root(),
                  beam_bilap_constant(), airy_first_zero());
    out << buf;
}

}  // namespace shellmodes
