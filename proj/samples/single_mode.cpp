// Shift the first Dirichlet eigenvalue of -y'' by eps and reconstruct the
// kernel that produces it. For small eps the answer is close to
// 2 eps sin(x) / (pi - x).

#include <cmath>
#include <cstdio>

#include "convspec/convspec.hpp"

int main() {
    using namespace convspec;
    const double eps = 1e-3;
    const Spectrum s({1.0 + eps, 4.0, 9.0, 16.0});

    SolverConfig cfg;
    cfg.grid_points = 513;
    const Inversion inv = invert_spectrum(s, cfg);
    std::printf("main equation: %d iterations, residual %.3e\n", inv.main.iterations, inv.main.residual_l2);

    std::printf("%8s %14s %14s\n", "x", "M(x)", "linearized");
    for (std::size_t i = 0; i < inv.M.size(); i += 64) {
        const double x = inv.M.x(i);
        const double lin = x < kPi ? 2 * eps * std::sin(x) / (kPi - x) : 2 * eps;
        std::printf("%8.4f %14.6e %14.6e\n", x, inv.M[i].real(), lin);
    }

    // Check the reconstruction against the direct solver.
    const Spectrum back = oracle_spectrum(inv.M, 4);
    for (std::size_t k = 1; k <= 4; ++k) {
        std::printf("lambda_%zu: given %.10f, recomputed %.10f\n", k, s(k).real(), back(k).real());
    }
    return 0;
}
