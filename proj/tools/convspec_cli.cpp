// convspec: command-line front end for the spectral reconstruction pipeline.
//
// Exit codes: 0 ok, 1 I/O, 2 solver failure, 3 invalid input.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "convspec/convspec.hpp"
#include "convspec/io.hpp"

namespace {

using namespace convspec;
using nlohmann::json;

SolverConfig load_config(const std::string& path) {
    if (path.empty()) return SolverConfig{};
    return parse_config(io::read_text(path));
}

json config_to_json(const SolverConfig& cfg) {
    return {{"grid_points", cfg.grid_points},
            {"nu_max", cfg.nu_max},
            {"fp_tol", cfg.fp_tol},
            {"max_iter", cfg.max_iter},
            {"newton_tol", cfg.newton_tol},
            {"newton_max_iter", cfg.newton_max_iter},
            {"K_default", cfg.K_default},
            {"quadrature", std::string(to_string(cfg.quadrature))},
            {"tail_closure", cfg.tail_closure == TailClosure::square ? "square" : "asymptotic"},
            {"tail_product_terms", cfg.tail_product_terms}};
}

json complex_array(const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx c : v) a.push_back({c.real(), c.imag()});
    return a;
}

void log_search(const EigenSearch& search) {
    for (const auto& r : search.roots) {
        std::cerr << "root " << r.index << ": lambda = " << io::fmt_double(r.lambda.real()) << " + "
                  << io::fmt_double(r.lambda.imag()) << "i, |Delta| = " << io::fmt_double(r.residual)
                  << ", iterations = " << r.iterations << (r.converged ? "" : ", FAILED: " + r.message) << '\n';
    }
    for (const auto& w : search.warnings) std::cerr << "warning: " << w << '\n';
}

json inversion_manifest(const std::string& command, const SolverConfig& cfg, const Spectrum& s, const Inversion& inv) {
    json history = json::array();
    for (double d : inv.main.history) history.push_back(d);
    return {{"command", command},
            {"config", config_to_json(cfg)},
            {"K", s.head_size()},
            {"tail",
             {{"kind", inv.tail.kind == TailModel::Kind::square ? "square" : "asymptotic"},
              {"A", {inv.tail.A.real(), inv.tail.A.imag()}}}},
            {"main_equation",
             {{"iterations", inv.main.iterations},
              {"damped", inv.main.damped},
              {"residual_l2", inv.main.residual_l2},
              {"update_history", history}}},
            {"norms",
             {{"w_l2", norm_l2(inv.w.w)}, {"N_l2w", norm_weighted_l2(inv.main.N)}, {"M_l2w", norm_weighted_l2(inv.M)}}},
            {"warnings", inv.warnings}};
}

Inversion run_inversion(const Spectrum& s, const SolverConfig& cfg) {
    Inversion inv = invert_spectrum(s, cfg);
    for (const auto& w : inv.warnings) std::cerr << "warning: " << w << '\n';
    std::cerr << "main equation: " << inv.main.iterations << " iterations"
              << (inv.main.damped ? " (damped)" : "") << ", residual " << io::fmt_double(inv.main.residual_l2)
              << '\n';
    return inv;
}

std::size_t pick_K(std::optional<std::size_t> K, const SolverConfig& cfg) {
    const std::size_t k = K.value_or(cfg.K_default);
    if (k < 1) throw ValidationError("cli", "K must be >= 1");
    return k;
}

// --- subcommands -----------------------------------------------------------

struct ForwardArgs {
    std::string kernel, out, config;
    std::optional<std::size_t> K;
};

int cmd_forward(const ForwardArgs& a) {
    const SolverConfig cfg = load_config(a.config);
    const GridFunction M = io::read_kernel(a.kernel);
    const auto search = oracle_search(M, pick_K(a.K, cfg), cfg.newton(), cfg.quadrature);
    log_search(search);
    io::write_spectrum(a.out, search.spectrum());
    return 0;
}

struct InvertArgs {
    std::string spectrum, out, config, manifest;
};

int cmd_invert(const InvertArgs& a) {
    const SolverConfig cfg = load_config(a.config);
    const Spectrum s = io::read_spectrum(a.spectrum);
    const Inversion inv = run_inversion(s, cfg);
    io::write_kernel(a.out, inv.M);
    if (!a.manifest.empty()) io::write_text(a.manifest, inversion_manifest("invert", cfg, s, inv).dump(2) + "\n");
    return 0;
}

struct RoundtripArgs {
    std::string kernel, out, config, manifest;
    std::optional<std::size_t> K;
};

int cmd_roundtrip(const RoundtripArgs& a) {
    SolverConfig cfg = load_config(a.config);
    const GridFunction M = io::read_kernel(a.kernel);
    cfg.grid_points = M.size();  // compare on the input's grid
    cfg.validate();
    const auto search = oracle_search(M, pick_K(a.K, cfg), cfg.newton(), cfg.quadrature);
    log_search(search);
    const Spectrum s = search.spectrum();
    const Inversion inv = run_inversion(s, cfg);
    const double err = norm_weighted_l2(inv.M - M);
    const double ref = norm_weighted_l2(M);
    std::cout << "||M - M_hat||_{2,pi} = " << io::fmt_double(err);
    if (ref > 0.0) std::cout << ", relative " << io::fmt_double(err / ref);
    std::cout << '\n';
    io::write_kernel(a.out, inv.M);
    if (!a.manifest.empty()) {
        json m = inversion_manifest("roundtrip", cfg, s, inv);
        m["spectrum"] = io::spectrum_to_json(s);
        m["error_l2w"] = err;
        m["relative_error_l2w"] = ref > 0.0 ? json(err / ref) : json(nullptr);
        io::write_text(a.manifest, m.dump(2) + "\n");
    }
    return 0;
}

struct StabilityArgs {
    std::string a, b, out, config;
};

int cmd_stability(const StabilityArgs& a) {
    const SolverConfig cfg = load_config(a.config);
    const Spectrum s = io::read_spectrum(a.a);
    const Spectrum t = io::read_spectrum(a.b);
    check_admissible(s);
    check_admissible(t);
    const StabilityReport rep = run_pair(s, t, cfg);
    io::write_text(a.out, io::report_to_json(rep).dump(2) + "\n");
    return 0;
}

struct EnsembleArgs {
    std::uint64_t seed = 1;
    std::size_t count = 10;
    double r = 1.0;
    std::optional<std::size_t> K;
    std::string mode = "random";
    std::vector<double> deltas{1e-1, 1e-2, 1e-3, 1e-4};
    std::string out, config;
};

int cmd_ensemble(const EnsembleArgs& a) {
    const SolverConfig cfg = load_config(a.config);
    if (!(a.r > 0.0)) throw ValidationError("cli", "--r must be positive");
    const std::size_t K = pick_K(a.K, cfg);
    std::vector<EnsembleRow> rows;
    if (a.mode == "random") {
        rows = run_ensemble(a.seed, a.count, a.r, K, cfg);
    } else {
        for (double d : a.deltas) {
            if (!(d > 0.0 && d <= 1.0)) throw ValidationError("cli", "sweep deltas must lie in (0, 1]");
        }
        rows = run_sweep(a.seed, a.r, K, a.deltas, cfg);
    }
    io::write_text(a.out, io::ensemble_to_csv(rows));
    return 0;
}

struct DiagnoseArgs {
    std::string spectrum, out, config;
};

int cmd_diagnose(const DiagnoseArgs& a) {
    const SolverConfig cfg = load_config(a.config);
    const Spectrum s = io::read_spectrum(a.spectrum);
    check_admissible(s);
    const std::size_t K = s.head_size();
    const Spectrum base = Spectrum::unperturbed(K);
    const auto eps = scaled_deviations(s);
    const auto kappa = sqrt_residuals(s);
    bool bound_ok = true;
    for (std::size_t k = 0; k < K; ++k) bound_ok = bound_ok && std::abs(kappa[k]) <= std::abs(eps[k]) * (1 + 1e-14);
    const double radius = ball_radius(s);
    const int r = std::max(1, static_cast<int>(std::ceil(radius)));

    json theta = json::array();
    for (double t : theta_sequence(s, base, r, 2 * K)) theta.push_back(io::number_or_inf(t));

    json out = {{"K", K},
                {"eps", complex_array(eps)},
                {"kappa", complex_array(kappa)},
                {"kappa_bounded_by_eps", bound_ok},
                {"Lambda_to_unperturbed", radius},
                {"Lambda1_to_unperturbed", lambda1_distance(s, base)},
                {"theta_r", r},
                {"theta", theta},
                {"a", complex_array(a_coefficients(s, K, K + 1))}};
    if (K >= 4) {
        const Inversion inv = run_inversion(s, cfg);
        const auto d = smoothness_diagnostic(s, inv.M);
        out["smoothness"] = {{"A_est", {d.A_est.real(), d.A_est.imag()}},
                             {"M0", {d.M0.real(), d.M0.imag()}},
                             {"residual_l2", d.residual_l2},
                             {"discrepancy", d.discrepancy}};
    } else {
        out["smoothness"] = nullptr;
        std::cerr << "warning: smoothness diagnostic needs K >= 4\n";
    }
    io::write_text(a.out, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconstruct convolution kernels from Dirichlet spectra and probe the stability of the inversion."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "convspec 1.0.0");

    ForwardArgs fwd;
    auto* forward = app.add_subcommand("forward", "kernel CSV -> spectrum JSON via the Cauchy-problem oracle");
    forward->add_option("--kernel", fwd.kernel, "kernel CSV (x,re,im)")->required();
    forward->add_option("--K", fwd.K, "number of eigenvalues (default: K_default)");
    forward->add_option("--out", fwd.out, "output spectrum JSON")->required();
    forward->add_option("--config", fwd.config, "solver config file");

    InvertArgs inv;
    auto* invert = app.add_subcommand("invert", "spectrum JSON -> kernel CSV");
    invert->add_option("--spectrum", inv.spectrum, "spectrum JSON")->required();
    invert->add_option("--out", inv.out, "output kernel CSV")->required();
    invert->add_option("--config", inv.config, "solver config file");
    invert->add_option("--manifest", inv.manifest, "write a run manifest JSON");

    RoundtripArgs rt;
    auto* roundtrip = app.add_subcommand("roundtrip", "kernel -> spectrum -> kernel, reporting the error");
    roundtrip->add_option("--kernel", rt.kernel, "kernel CSV (x,re,im)")->required();
    roundtrip->add_option("--K", rt.K, "number of eigenvalues (default: K_default)");
    roundtrip->add_option("--out", rt.out, "reconstructed kernel CSV")->required();
    roundtrip->add_option("--config", rt.config, "solver config file");
    roundtrip->add_option("--manifest", rt.manifest, "write a run manifest JSON");

    StabilityArgs st;
    auto* stability = app.add_subcommand("stability", "deviation report for a pair of spectra");
    stability->add_option("--a", st.a, "first spectrum JSON")->required();
    stability->add_option("--b", st.b, "second spectrum JSON")->required();
    stability->add_option("--out", st.out, "report JSON")->required();
    stability->add_option("--config", st.config, "solver config file");

    EnsembleArgs en;
    auto* ensemble = app.add_subcommand("ensemble", "seeded random pairs or a shrinking-perturbation sweep");
    ensemble->add_option("--seed", en.seed, "base seed")->capture_default_str();
    ensemble->add_option("--count", en.count, "number of random pairs")->capture_default_str();
    ensemble->add_option("--r", en.r, "radius of the spectral ball")->capture_default_str();
    ensemble->add_option("--K", en.K, "head length (default: K_default)");
    ensemble->add_option("--mode", en.mode, "random | sweep")
        ->check(CLI::IsMember({"random", "sweep"}))
        ->capture_default_str();
    ensemble->add_option("--deltas", en.deltas, "perturbation scales for --mode sweep")->delimiter(',');
    ensemble->add_option("--out", en.out, "output CSV")->required();
    ensemble->add_option("--config", en.config, "solver config file");

    DiagnoseArgs dg;
    auto* diagnose = app.add_subcommand("diagnose", "spectral diagnostics of one spectrum");
    diagnose->add_option("--spectrum", dg.spectrum, "spectrum JSON")->required();
    diagnose->add_option("--out", dg.out, "output JSON")->required();
    diagnose->add_option("--config", dg.config, "solver config file");

    std::string cfg_path;
    bool dump = false;
    auto* config = app.add_subcommand("config", "show the solver configuration");
    config->add_flag("--dump", dump, "print the effective configuration");
    config->add_option("--config", cfg_path, "config file to load");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (*forward) return cmd_forward(fwd);
        if (*invert) return cmd_invert(inv);
        if (*roundtrip) return cmd_roundtrip(rt);
        if (*stability) return cmd_stability(st);
        if (*ensemble) return cmd_ensemble(en);
        if (*diagnose) return cmd_diagnose(dg);
        if (*config) {
            const SolverConfig cfg = load_config(cfg_path);
            if (dump || cfg_path.empty()) std::cout << dump_config(cfg);
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
        if (!e.history().empty()) {
            std::cerr << "history:";
            for (double d : e.history()) std::cerr << ' ' << io::fmt_double(d);
            std::cerr << '\n';
        }
        return 2;
    } catch (const Error& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
