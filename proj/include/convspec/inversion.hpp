#pragma once

#include <string>
#include <vector>

#include "convspec/char_fn.hpp"
#include "convspec/config.hpp"
#include "convspec/main_equation.hpp"
#include "convspec/recovery.hpp"
#include "convspec/spectrum.hpp"

namespace convspec {

/// Every intermediate of one spectrum -> kernel reconstruction.
struct Inversion {
    TailModel tail;
    WKernel w;
    MainEqSolution main;
    GridFunction M;
    std::vector<std::string> warnings;
};

/// Spectrum -> w (Fourier sine series of k Delta(k^2)) -> N (main equation)
/// -> M = 2N - int N^{*2}.
inline Inversion invert_spectrum(const Spectrum& s, const SolverConfig& cfg) {
    cfg.validate();
    check_admissible(s);
    std::vector<std::string> warnings;
    TailModel tail = TailModel::square();
    if (cfg.tail_closure == TailClosure::asymptotic) {
        if (s.head_size() >= 4) {
            tail = TailModel::asymptotic(fit_asymptotic_constant(s).A, cfg.tail_product_terms);
        } else {
            warnings.push_back("asymptotic tail needs K >= 4; using the square tail");
        }
    }
    const CharProduct cp(s, tail);
    WKernel w = build_w(cp, cfg.grid_points, s.head_size());
    warnings.insert(warnings.end(), w.warnings.begin(), w.warnings.end());
    MainEqSolution main = solve_main_equation(w.w, cfg.main_equation());
    GridFunction M = n_to_m(main.N, cfg.quadrature);
    return {tail, std::move(w), std::move(main), std::move(M), std::move(warnings)};
}

}  // namespace convspec
