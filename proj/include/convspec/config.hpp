#pragma once

#include <charconv>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include "convspec/char_fn.hpp"
#include "convspec/errors.hpp"
#include "convspec/main_equation.hpp"
#include "convspec/quadrature.hpp"

namespace convspec {

enum class TailClosure { square, asymptotic };

/// Every numerical knob of the pipeline. Read from `key = value` text;
/// `#` starts a comment.
struct SolverConfig {
    std::size_t grid_points = kDefaultGridPoints;
    int nu_max = 30;
    double fp_tol = 1e-12;
    int max_iter = 200;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    std::size_t K_default = 16;
    Quadrature quadrature = Quadrature::gregory;
    TailClosure tail_closure = TailClosure::square;
    std::size_t tail_product_terms = 100000;

    MainEqConfig main_equation() const { return {nu_max, fp_tol, max_iter, quadrature}; }
    NewtonOptions newton() const { return {newton_tol, newton_max_iter}; }

    void validate() const {
        if (grid_points < 8) throw ValidationError("config", "grid_points must be >= 8");
        if (K_default < 1) throw ValidationError("config", "K_default must be >= 1");
        if (!(newton_tol > 0.0) || newton_max_iter < 1) {
            throw ValidationError("config", "newton_tol must be positive and newton_max_iter >= 1");
        }
        main_equation().validate();
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ValidationError("config", "bad value '" + std::string(value) + "' for key '" + std::string(key) + "'");
    }
    return out;
}

}  // namespace detail

inline SolverConfig parse_config(std::string_view text) {
    SolverConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("config", "line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (key == "grid_points") {
            cfg.grid_points = detail::parse_number<std::size_t>(key, value);
        } else if (key == "nu_max") {
            cfg.nu_max = detail::parse_number<int>(key, value);
        } else if (key == "fp_tol") {
            cfg.fp_tol = detail::parse_number<double>(key, value);
        } else if (key == "max_iter") {
            cfg.max_iter = detail::parse_number<int>(key, value);
        } else if (key == "newton_tol") {
            cfg.newton_tol = detail::parse_number<double>(key, value);
        } else if (key == "newton_max_iter") {
            cfg.newton_max_iter = detail::parse_number<int>(key, value);
        } else if (key == "K_default") {
            cfg.K_default = detail::parse_number<std::size_t>(key, value);
        } else if (key == "quadrature") {
            try {
                cfg.quadrature = quadrature_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw ValidationError("config", e.what());
            }
        } else if (key == "tail_closure") {
            if (value == "square") {
                cfg.tail_closure = TailClosure::square;
            } else if (value == "asymptotic") {
                cfg.tail_closure = TailClosure::asymptotic;
            } else {
                throw ValidationError("config", "tail_closure must be 'square' or 'asymptotic'");
            }
        } else if (key == "tail_product_terms") {
            cfg.tail_product_terms = detail::parse_number<std::size_t>(key, value);
        } else {
            throw ValidationError("config", "unknown key '" + std::string(key) + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline std::string dump_config(const SolverConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "grid_points = " << cfg.grid_points << '\n'
       << "nu_max = " << cfg.nu_max << '\n'
       << "fp_tol = " << cfg.fp_tol << '\n'
       << "max_iter = " << cfg.max_iter << '\n'
       << "newton_tol = " << cfg.newton_tol << '\n'
       << "newton_max_iter = " << cfg.newton_max_iter << '\n'
       << "K_default = " << cfg.K_default << '\n'
       << "quadrature = " << to_string(cfg.quadrature) << '\n'
       << "tail_closure = " << (cfg.tail_closure == TailClosure::square ? "square" : "asymptotic") << '\n'
       << "tail_product_terms = " << cfg.tail_product_terms << '\n';
    return os.str();
}

}  // namespace convspec
