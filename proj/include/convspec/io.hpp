#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "convspec/errors.hpp"
#include "convspec/grid.hpp"
#include "convspec/spectrum.hpp"
#include "convspec/stability_lab.hpp"

namespace convspec::io {

using nlohmann::json;

/// Shortest-enough text that round-trips a double.
inline std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("io", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("io", "cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("io", "write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Kernel CSV: header "x,re,im", one row per grid node.

inline std::string kernel_to_csv(const GridFunction& f) {
    std::string out = "x,re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += fmt_double(f.x(i)) + ',' + fmt_double(f[i].real()) + ',' + fmt_double(f[i].imag()) + '\n';
    }
    return out;
}

inline GridFunction kernel_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("kernel_csv", "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,re,im") throw IoError("kernel_csv", "expected header 'x,re,im', got '" + line + "'");
    std::vector<double> xs;
    std::vector<cplx> vals;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double x = 0, re = 0, im = 0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &x, &re, &im, &tail) != 3) {
            throw IoError("kernel_csv", "row " + std::to_string(row) + ": expected three numbers");
        }
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (vals.size() < 2) throw IoError("kernel_csv", "need at least 2 rows");
    const double h = kPi / static_cast<double>(vals.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i] - static_cast<double>(i) * h) > 1e-9) {
            throw IoError("kernel_csv", "row " + std::to_string(i + 2) +
                                            ": x is not on the uniform grid over [0, pi]");
        }
    }
    return GridFunction(std::move(vals));
}

inline GridFunction read_kernel(const std::string& path) { return kernel_from_csv(read_text(path)); }

inline void write_kernel(const std::string& path, const GridFunction& f) { write_text(path, kernel_to_csv(f)); }

// ---------------------------------------------------------------------------
// Spectrum JSON: {"K": int, "lambda": [[re, im], ...]}; tail k^2 implicit.

inline json spectrum_to_json(const Spectrum& s) {
    json lam = json::array();
    for (cplx v : s.head()) lam.push_back({v.real(), v.imag()});
    return {{"K", s.head_size()}, {"lambda", lam}};
}

inline Spectrum spectrum_from_json(const json& j) {
    if (!j.is_object() || !j.contains("K") || !j.contains("lambda")) {
        throw ValidationError("spectrum_json", "expected an object with keys 'K' and 'lambda'");
    }
    if (!j["K"].is_number_integer() || j["K"].get<long long>() < 1) {
        throw ValidationError("spectrum_json", "'K' must be a positive integer");
    }
    const auto K = j["K"].get<std::size_t>();
    const json& lam = j["lambda"];
    if (!lam.is_array() || lam.size() != K) {
        throw ValidationError("spectrum_json", "'lambda' must be an array of K = " + std::to_string(K) + " pairs");
    }
    std::vector<cplx> head;
    head.reserve(K);
    for (const auto& p : lam) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
            throw ValidationError("spectrum_json", "each eigenvalue must be [re, im]");
        }
        head.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return complete_tail(head, K);
}

inline Spectrum read_spectrum(const std::string& path) {
    const std::string text = read_text(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError("spectrum_json", "'" + path + "': " + e.what());
    }
    return spectrum_from_json(j);
}

inline void write_spectrum(const std::string& path, const Spectrum& s) {
    write_text(path, spectrum_to_json(s).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Stability reports

/// Finite doubles as numbers, +inf as the string "inf".
inline json number_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

inline json optional_number(const std::optional<double>& v) { return v ? number_or_inf(*v) : json(nullptr); }

inline json report_to_json(const StabilityReport& r) {
    const auto q = r.ratios();
    json theta = json::array();
    for (double t : r.theta) theta.push_back(number_or_inf(t));
    json a = json::array();
    for (cplx v : r.a_head) a.push_back({v.real(), v.imag()});
    return {
        {"Lambda", r.lambda_dist},
        {"Lambda1", number_or_inf(r.lambda1_dist)},
        {"r_ball", r.r_ball},
        {"deviations",
         {{"w_l2", r.dw_l2},
          {"w_inf", r.dw_inf},
          {"N_l2w", r.dN_l2w},
          {"N_infw", r.dN_infw},
          {"M_l2w", r.dM_l2w},
          {"M_infw", r.dM_infw}}},
        {"ratios",
         {{"M_l2w_per_Lambda", optional_number(q.M_l2w_per_Lambda)},
          {"M_infw_per_Lambda1", optional_number(q.M_infw_per_Lambda1)},
          {"w_l2_per_Lambda", optional_number(q.w_l2_per_Lambda)},
          {"w_inf_per_Lambda1", optional_number(q.w_inf_per_Lambda1)},
          {"N_l2w_per_w_l2", optional_number(q.N_l2w_per_w_l2)},
          {"N_infw_per_w_inf", optional_number(q.N_infw_per_w_inf)},
          {"M_l2w_per_N_l2w", optional_number(q.M_l2w_per_N_l2w)},
          {"M_infw_per_N_infw", optional_number(q.M_infw_per_N_infw)}}},
        {"theta_r", r.theta_r},
        {"theta", theta},
        {"a", a},
    };
}

inline std::string optional_csv(const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); }

/// One row per pair: seed, delta, distances, deviations, ratios.
inline std::string ensemble_to_csv(const std::vector<EnsembleRow>& rows) {
    std::string out =
        "seed,delta,Lambda,Lambda1,r_ball,w_l2,w_inf,N_l2w,N_infw,M_l2w,M_infw,"
        "M_l2w_per_Lambda,M_infw_per_Lambda1,w_l2_per_Lambda,w_inf_per_Lambda1,"
        "N_l2w_per_w_l2,N_infw_per_w_inf,M_l2w_per_N_l2w,M_infw_per_N_infw\n";
    for (const auto& row : rows) {
        const auto& r = row.report;
        const auto q = r.ratios();
        out += std::to_string(row.seed) + ',' + fmt_double(row.delta) + ',' + fmt_double(r.lambda_dist) + ',' +
               fmt_double(r.lambda1_dist) + ',' + fmt_double(r.r_ball) + ',' + fmt_double(r.dw_l2) + ',' +
               fmt_double(r.dw_inf) + ',' + fmt_double(r.dN_l2w) + ',' + fmt_double(r.dN_infw) + ',' +
               fmt_double(r.dM_l2w) + ',' + fmt_double(r.dM_infw) + ',' + optional_csv(q.M_l2w_per_Lambda) + ',' +
               optional_csv(q.M_infw_per_Lambda1) + ',' + optional_csv(q.w_l2_per_Lambda) + ',' +
               optional_csv(q.w_inf_per_Lambda1) + ',' + optional_csv(q.N_l2w_per_w_l2) + ',' +
               optional_csv(q.N_infw_per_w_inf) + ',' + optional_csv(q.M_l2w_per_N_l2w) + ',' +
               optional_csv(q.M_infw_per_N_infw) + '\n';
    }
    return out;
}

}  // namespace convspec::io
