// Command-line front end: runs the device scenarios as reproducible batch
// jobs emitting CSV plus a JSON report.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdosim/cdo.hpp"
#include "cdosim/io.hpp"
#include "cdosim/mzi.hpp"
#include "cdosim/tomography.hpp"

using namespace cdosim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x243f6a8885a308d3ull;

struct RunConfig {
    std::string scenario;
    std::vector<double> thetas = {0.04, 0.02, 0.01};
    double theta = 0.01;
    std::string alpha;      // optional "re[,im]"
    std::string beta;       // optional "re[,im]"
    int dim_a = 0;          // 0: pick automatically per scenario
    std::string mode = "ideal";
    double grid_b = 5.0;
    double grid_h = 0.2;
    double grid_z = 3.0;
    double grid_g = 0.1;
    long shots = 0;
    std::uint64_t seed = kDefaultSeed;
    double efficiency = 1.0;
    std::string out = ".";
    std::string state; // empty: scenario default (fock:1 for sweeps, vacuum otherwise)
    std::string sign = "+";
    double alpha0 = 1.5;
    double max_error_tol = 0.0; // 0: not enforced
    double fidelity_tol = 0.0;  // 0: not enforced
};

// Option handles needed to tell explicit flags from defaults when a config
// file is also present (flags override file, file overrides defaults).
struct OptionSet {
    CLI::App* cmd = nullptr;
    std::string config_path;
    RunConfig flags;
};

void add_common_options(OptionSet& opts) {
    CLI::App* cmd = opts.cmd;
    RunConfig& f = opts.flags;
    cmd->add_option("--config", opts.config_path,
                    "JSON config file; explicit flags override it");
    cmd->add_option("--theta", f.thetas,
                    "Kerr cross-phase per photon pair (repeatable for sweeps)");
    cmd->add_option("--alpha", f.alpha, "device displacement, re[,im]");
    cmd->add_option("--beta", f.beta, "conditional displacement, re[,im]");
    cmd->add_option("--dim-a", f.dim_a, "mode-a Fock levels (0 = automatic)");
    cmd->add_option("--mode", f.mode, "gate model: ideal | exact")
        ->check(CLI::IsMember({"ideal", "exact"}));
    cmd->add_option("--grid-b", f.grid_b, "chi lattice half-extent");
    cmd->add_option("--grid-h", f.grid_h, "chi lattice spacing");
    cmd->add_option("--grid-z", f.grid_z, "Wigner lattice half-extent");
    cmd->add_option("--grid-g", f.grid_g, "Wigner lattice spacing");
    cmd->add_option("--shots", f.shots, "Monte Carlo shots (0 = exact)");
    cmd->add_option("--seed", f.seed, "master random seed");
    cmd->add_option("--efficiency", f.efficiency,
                    "detector efficiency in (0, 1]");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--state", f.state,
                    "input state: vacuum | fock:N | coherent:RE[,IM] | "
                    "cat:A0,(+|-) | file:PATH");
    cmd->add_option("--sign", f.sign, "branch sign: + | -")
        ->check(CLI::IsMember({"+", "-"}));
    cmd->add_option("--alpha0", f.alpha0, "cat coherent amplitude");
    cmd->add_option("--max-error-tol", f.max_error_tol,
                    "fail the run when the oracle deviation exceeds this");
    cmd->add_option("--fidelity-tol", f.fidelity_tol,
                    "fail the run when the target fidelity falls below this");
}

template <typename T>
void from_config(const json& j, const char* key, T& value) {
    if (j.contains(key)) {
        j.at(key).get_to(value);
    }
}

RunConfig merge_config(const OptionSet& opts) {
    RunConfig cfg;
    cfg.scenario = opts.cmd->get_name();
    if (!opts.config_path.empty()) {
        const json j = json::parse(io::read_text_file(opts.config_path));
        from_config(j, "thetas", cfg.thetas);
        from_config(j, "theta", cfg.theta);
        from_config(j, "alpha", cfg.alpha);
        from_config(j, "beta", cfg.beta);
        from_config(j, "dim_a", cfg.dim_a);
        from_config(j, "mode", cfg.mode);
        from_config(j, "grid_b", cfg.grid_b);
        from_config(j, "grid_h", cfg.grid_h);
        from_config(j, "grid_z", cfg.grid_z);
        from_config(j, "grid_g", cfg.grid_g);
        from_config(j, "shots", cfg.shots);
        from_config(j, "seed", cfg.seed);
        from_config(j, "efficiency", cfg.efficiency);
        from_config(j, "state", cfg.state);
        from_config(j, "sign", cfg.sign);
        from_config(j, "alpha0", cfg.alpha0);
        from_config(j, "max_error_tol", cfg.max_error_tol);
        from_config(j, "fidelity_tol", cfg.fidelity_tol);
    }
    const CLI::App* cmd = opts.cmd;
    const RunConfig& f = opts.flags;
    if (cmd->count("--theta")) {
        cfg.thetas = f.thetas;
        if (!f.thetas.empty()) {
            cfg.theta = f.thetas.front();
        }
    }
    if (cmd->count("--alpha")) cfg.alpha = f.alpha;
    if (cmd->count("--beta")) cfg.beta = f.beta;
    if (cmd->count("--dim-a")) cfg.dim_a = f.dim_a;
    if (cmd->count("--mode")) cfg.mode = f.mode;
    if (cmd->count("--grid-b")) cfg.grid_b = f.grid_b;
    if (cmd->count("--grid-h")) cfg.grid_h = f.grid_h;
    if (cmd->count("--grid-z")) cfg.grid_z = f.grid_z;
    if (cmd->count("--grid-g")) cfg.grid_g = f.grid_g;
    if (cmd->count("--shots")) cfg.shots = f.shots;
    if (cmd->count("--seed")) cfg.seed = f.seed;
    if (cmd->count("--efficiency")) cfg.efficiency = f.efficiency;
    if (cmd->count("--out")) cfg.out = f.out;
    if (cmd->count("--state")) cfg.state = f.state;
    if (cmd->count("--sign")) cfg.sign = f.sign;
    if (cmd->count("--alpha0")) cfg.alpha0 = f.alpha0;
    if (cmd->count("--max-error-tol")) cfg.max_error_tol = f.max_error_tol;
    if (cmd->count("--fidelity-tol")) cfg.fidelity_tol = f.fidelity_tol;
    return cfg;
}

json config_echo(const RunConfig& cfg) {
    json j;
    j["thetas"] = cfg.thetas;
    j["theta"] = cfg.theta;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["dim_a"] = cfg.dim_a;
    j["mode"] = cfg.mode;
    j["grid_b"] = cfg.grid_b;
    j["grid_h"] = cfg.grid_h;
    j["grid_z"] = cfg.grid_z;
    j["grid_g"] = cfg.grid_g;
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
    j["efficiency"] = cfg.efficiency;
    j["state"] = cfg.state;
    j["sign"] = cfg.sign;
    j["alpha0"] = cfg.alpha0;
    j["max_error_tol"] = cfg.max_error_tol;
    j["fidelity_tol"] = cfg.fidelity_tol;
    return j;
}

struct StateSpec {
    ModeState state;
    std::string description;
    // analytic coherent decomposition when the input is vacuum/coherent,
    // enabling a closed-form target for prepared superpositions
    std::optional<Complex> coherent_amplitude;
};

Complex coherent_level(Complex alpha, int n) {
    if (alpha == Complex(0.0, 0.0)) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double mag = std::exp(n * std::log(std::abs(alpha)) -
                                std::norm(alpha) / 2.0 -
                                0.5 * std::lgamma(n + 1.0));
    return std::polar(mag, n * std::arg(alpha));
}

ModeState analytic_cat(double a0, int sign, int dim) {
    VectorXcd v(dim);
    for (int n = 0; n < dim; ++n) {
        v[n] = coherent_level(a0, n) *
               (1.0 + sign * ((n % 2 == 0) ? 1.0 : -1.0));
    }
    v /= v.norm();
    return ModeState(FockDim(dim), std::move(v));
}

StateSpec parse_state(const std::string& spec, int dim) {
    if (spec == "vacuum") {
        return {fock_state(0, FockDim(dim)), "vacuum", Complex(0.0, 0.0)};
    }
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "fock") {
        const int n = std::stoi(arg);
        return {fock_state(n, FockDim(dim)), "fock:" + std::to_string(n),
                n == 0 ? std::optional<Complex>(Complex(0.0, 0.0))
                       : std::nullopt};
    }
    if (kind == "coherent") {
        const Complex a = io::parse_complex(arg);
        return {coherent_state(a, FockDim(dim)).state,
                "coherent:" + io::format_complex(a), a};
    }
    if (kind == "cat") {
        const auto comma = arg.rfind(',');
        if (comma == std::string::npos) {
            throw SimError("cat state needs cat:A0,(+|-)");
        }
        const double a0 = std::stod(arg.substr(0, comma));
        const std::string s = arg.substr(comma + 1);
        if (s != "+" && s != "-") {
            throw SimError("cat sign must be + or -");
        }
        return {analytic_cat(a0, s == "+" ? +1 : -1, dim),
                "cat:" + arg, std::nullopt};
    }
    if (kind == "file") {
        const auto amps = io::read_amplitude_file(arg);
        if (static_cast<int>(amps.size()) > dim) {
            throw SimError("amplitude file holds more levels than dim-a");
        }
        VectorXcd v = VectorXcd::Zero(dim);
        for (std::size_t n = 0; n < amps.size(); ++n) {
            v[static_cast<int>(n)] = amps[n];
        }
        const double nrm = v.norm();
        if (nrm < 1e-15) {
            throw SimError("amplitude file describes the zero vector");
        }
        return {ModeState(FockDim(dim), v / nrm), "file:" + arg, std::nullopt};
    }
    throw SimError("unknown state spec '" + spec + "'");
}

// smallest dimension whose corner guard accepts the chi lattice
int auto_grid_dim(double grid_b) {
    const int needed = static_cast<int>(std::ceil(8.0 * grid_b * grid_b)) + 8;
    return std::max(32, (needed + 7) / 8 * 8);
}

struct Report {
    json j;
    fs::path dir;
    std::vector<std::string> files;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    explicit Report(const RunConfig& cfg) : dir(cfg.out) {
        fs::create_directories(dir);
        j["scenario"] = cfg.scenario;
        j["config"] = config_echo(cfg);
        j["summary"] = json::object();
        j["messages"] = json::array();
    }

    void emit(const std::string& name, const std::string& contents) {
        io::write_text_file(dir / name, contents);
        files.push_back(name);
    }

    void message(const std::string& m) { j["messages"].push_back(m); }

    int finish(bool ok) {
        j["files"] = files;
        j["status"] = ok ? "ok" : "failed";
        j["duration_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        io::write_text_file(dir / "report.json", j.dump(2) + "\n");
        return ok ? 0 : 1;
    }
};

Complex required_beta(const RunConfig& cfg, Complex fallback) {
    if (!cfg.beta.empty()) {
        const Complex beta = io::parse_complex(cfg.beta);
        if (!cfg.alpha.empty()) {
            const Complex alpha = io::parse_complex(cfg.alpha);
            const Complex derived = Complex(0.0, -1.0) * cfg.theta * alpha;
            if (std::abs(derived - beta) > 1e-12) {
                throw SimError(
                    "beta and (theta, alpha) are inconsistent: beta = " +
                    io::format_complex(beta) + " but -i theta alpha = " +
                    io::format_complex(derived));
            }
        }
        return beta;
    }
    if (!cfg.alpha.empty()) {
        return Complex(0.0, -1.0) * cfg.theta * io::parse_complex(cfg.alpha);
    }
    return fallback;
}

CdoMode parse_mode(const RunConfig& cfg) {
    return cfg.mode == "exact" ? CdoMode::Exact : CdoMode::Ideal;
}

// ---- scenarios -------------------------------------------------------------

int cmd_cdo_fidelity(const RunConfig& raw) {
    RunConfig cfg = raw;
    if (cfg.state.empty()) {
        cfg.state = "fock:1";
    }
    Report report(cfg);
    const int dim = cfg.dim_a > 0 ? cfg.dim_a : 32;
    const Complex beta = required_beta(cfg, Complex(0.0, -0.5));

    VectorXcd b(2);
    b << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const StateSpec probe_a = parse_state(cfg.state, dim);
    const TwoModeState probe =
        tensor(probe_a.state, ModeState(FockDim(2), std::move(b)));

    const ConvergenceScan scan = convergence_scan(beta, cfg.thetas, probe);
    report.emit("scan.csv", io::scan_csv(scan));

    report.j["summary"]["beta"] = io::format_complex(beta);
    report.j["summary"]["probe"] = probe_a.description;
    report.j["summary"]["rows"] = scan.rows.size();
    report.j["summary"]["monotone_decreasing"] = scan.monotone_decreasing;
    if (scan.order_estimate) {
        report.j["summary"]["order_estimate"] = *scan.order_estimate;
    }
    return report.finish(true);
}

int run_preparation(const RunConfig& cfg, const StateSpec& input,
                    Complex beta, const std::optional<ModeState>& target) {
    Report report(cfg);
    const Sign sign = cfg.sign == "+" ? Sign::Plus : Sign::Minus;
    const CdoParams cdo{Complex(0.0, 1.0) * beta / cfg.theta, cfg.theta};
    const MziParams params{-cdo.kerr_phase(), cdo, parse_mode(cfg)};

    std::optional<DetectionOutcome> outcome;
    try {
        outcome = prepare_superposition(input.state, beta, sign, params);
    } catch (const PostselectionError& e) {
        std::fprintf(stderr, "degenerate post-selection: %s\n", e.what());
        report.message(std::string("degenerate post-selection: ") + e.what());
        return report.finish(false);
    }

    report.emit("amplitudes.csv", io::amplitude_csv(outcome->conditional_state));
    auto& summary = report.j["summary"];
    json table = json::array();
    for (int n = 0; n < outcome->conditional_state.dim(); ++n) {
        const Complex a = outcome->conditional_state.amplitudes()[n];
        table.push_back({a.real(), a.imag()});
    }
    summary["amplitudes"] = table;
    summary["input"] = input.description;
    summary["beta"] = io::format_complex(beta);
    summary["sign"] = cfg.sign;
    summary["mode"] = cfg.mode;
    summary["success_probability"] = outcome->probability;
    summary["conditional_tail_mass"] = outcome->conditional_state.tail_mass();
    // normalization drops the overall 0.5 e^{-i theta |alpha|^2} prefactor
    summary["global_phase_dropped"] = true;

    bool ok = true;
    if (target) {
        const double f = fidelity(outcome->conditional_state, *target);
        summary["fidelity_to_analytic_target"] = f;
        if (cfg.fidelity_tol > 0.0 && f < cfg.fidelity_tol) {
            report.message("fidelity below the configured tolerance");
            ok = false;
        }
    }
    return report.finish(ok);
}

int cmd_prepare(const RunConfig& raw) {
    RunConfig cfg = raw;
    if (cfg.state.empty()) {
        cfg.state = "vacuum";
    }
    const int dim = cfg.dim_a > 0 ? cfg.dim_a : 32;
    const Complex beta = required_beta(cfg, Complex(2.0, 0.0));
    const StateSpec input = parse_state(cfg.state, dim);

    std::optional<ModeState> target;
    if (input.coherent_amplitude) {
        // |a0> + sign e^{i Im(beta conj(a0))} |a0 + beta>, assembled from the
        // closed-form coherent amplitudes
        const Complex a0 = *input.coherent_amplitude;
        const Complex phase =
            std::exp(Complex(0.0, 1.0) * std::imag(beta * std::conj(a0)));
        const double s = cfg.sign == "+" ? 1.0 : -1.0;
        VectorXcd v(dim);
        for (int n = 0; n < dim; ++n) {
            v[n] = coherent_level(a0, n) +
                   s * phase * coherent_level(a0 + beta, n);
        }
        const double nrm = v.norm();
        if (nrm > 1e-9) {
            target = ModeState(FockDim(dim), v / nrm);
        }
    }
    return run_preparation(cfg, input, beta, target);
}

int cmd_cat(const RunConfig& cfg) {
    const int dim = cfg.dim_a > 0 ? cfg.dim_a : 48;
    RunConfig effective = cfg;
    effective.state = "coherent:" + io::format_double(cfg.alpha0);
    const StateSpec input = parse_state(effective.state, dim);
    const Complex beta(-2.0 * cfg.alpha0, 0.0);
    const ModeState target =
        analytic_cat(cfg.alpha0, cfg.sign == "+" ? +1 : -1, dim);
    return run_preparation(effective, input, beta, target);
}

json grid_sidecar(const RunConfig& cfg, int dim) {
    json j;
    j["theta"] = cfg.theta;
    j["mode"] = cfg.mode;
    j["dim_a"] = dim;
    j["state"] = cfg.state;
    j["grid"] = {{"half_extent", cfg.grid_b}, {"spacing", cfg.grid_h}};
    j["sampling"] = {{"shots", cfg.shots},
                     {"seed", cfg.seed},
                     {"efficiency", cfg.efficiency}};
    j["alpha_rule"] = "alpha = i beta / theta, eta = xi0 - theta |alpha|^2";
    return j;
}

int cmd_chi(const RunConfig& raw) {
    RunConfig cfg = raw;
    if (cfg.state.empty()) {
        cfg.state = "vacuum";
    }
    Report report(cfg);
    const int dim = cfg.dim_a > 0 ? cfg.dim_a : auto_grid_dim(cfg.grid_b);
    const StateSpec input = parse_state(cfg.state, dim);
    const DensityMatrix rho = density_from_pure(input.state);
    const TomographyDevice dev{cfg.theta, parse_mode(cfg)};
    const Sampling sampling{cfg.shots, cfg.seed, cfg.efficiency};

    const ChiGrid grid =
        sample_chi_grid(dev, rho, cfg.grid_b, cfg.grid_h, sampling);
    report.emit("chi.csv", io::chi_csv(grid));
    json sidecar = grid_sidecar(cfg, dim);
    sidecar["lattice_points"] = grid.size();
    report.emit("chi.json", sidecar.dump(2) + "\n");

    double max_mod = 0.0;
    for (const ChiSample& s : grid.samples()) {
        max_mod = std::max(max_mod, std::abs(s.chi));
    }
    report.j["summary"]["dim_a"] = dim;
    report.j["summary"]["chi_origin_re"] = grid.at(0, 0).chi.real();
    report.j["summary"]["max_abs_chi"] = max_mod;
    return report.finish(true);
}

int cmd_wigner(const RunConfig& raw) {
    RunConfig cfg = raw;
    if (cfg.state.empty()) {
        cfg.state = "vacuum";
    }
    Report report(cfg);
    const int dim = cfg.dim_a > 0 ? cfg.dim_a : auto_grid_dim(cfg.grid_b);
    const StateSpec input = parse_state(cfg.state, dim);
    const DensityMatrix rho = density_from_pure(input.state);
    const TomographyDevice dev{cfg.theta, parse_mode(cfg)};
    const Sampling sampling{cfg.shots, cfg.seed, cfg.efficiency};

    const ChiGrid grid =
        sample_chi_grid(dev, rho, cfg.grid_b, cfg.grid_h, sampling);
    report.emit("chi.csv", io::chi_csv(grid));
    const WignerGrid w = wigner_from_chi(grid, cfg.grid_z, cfg.grid_g);
    report.emit("wigner.csv", io::wigner_csv(w));

    json sidecar = grid_sidecar(cfg, dim);
    sidecar["wigner_grid"] = {{"half_extent", cfg.grid_z},
                              {"spacing", cfg.grid_g}};
    sidecar["max_imag_residue"] = w.max_imag_residue;
    report.emit("wigner.json", sidecar.dump(2) + "\n");

    // displaced-parity oracle over the reconstruction lattice
    const WignerOracle oracle(rho);
    double max_err = 0.0;
    double norm = 0.0;
    for (int i = -w.n; i <= w.n; ++i) {
        for (int j = -w.n; j <= w.n; ++j) {
            const double v = w.at(i, j);
            max_err = std::max(max_err, std::abs(v - oracle.value(w.z_at(i, j))));
            norm += v * cfg.grid_g * cfg.grid_g;
        }
    }
    auto& summary = report.j["summary"];
    summary["dim_a"] = dim;
    summary["w_origin"] = w.at(0, 0);
    summary["max_error_vs_oracle"] = max_err;
    summary["normalization"] = norm;
    summary["max_imag_residue"] = w.max_imag_residue;
    if (w.residue_warning) {
        report.message("inconsistent grid: imaginary residue above 1e-6");
    }

    bool ok = !w.residue_warning;
    if (cfg.max_error_tol > 0.0 && max_err > cfg.max_error_tol) {
        report.message("oracle deviation above the configured tolerance");
        ok = false;
    }
    return report.finish(ok);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Truncated-Fock-space simulator of a Kerr-based conditional "
        "displacement device, Mach-Zehnder state preparation and Wigner "
        "tomography"};
    app.require_subcommand(1);

    OptionSet scan_opts;
    scan_opts.cmd = app.add_subcommand(
        "cdo-fidelity", "convergence of the gate approximation in theta");
    OptionSet prepare_opts;
    prepare_opts.cmd = app.add_subcommand(
        "prepare", "post-selected |psi> +- D(beta)|psi> preparation");
    OptionSet cat_opts;
    cat_opts.cmd = app.add_subcommand(
        "cat", "even/odd coherent-superposition preparation");
    OptionSet chi_opts;
    chi_opts.cmd = app.add_subcommand(
        "chi", "characteristic-function lattice from detection records");
    OptionSet wigner_opts;
    wigner_opts.cmd = app.add_subcommand(
        "wigner", "Wigner reconstruction with oracle comparison");
    for (OptionSet* opts : {&scan_opts, &prepare_opts, &cat_opts, &chi_opts,
                            &wigner_opts}) {
        add_common_options(*opts);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan_opts.cmd->parsed()) {
            return cmd_cdo_fidelity(merge_config(scan_opts));
        }
        if (prepare_opts.cmd->parsed()) {
            return cmd_prepare(merge_config(prepare_opts));
        }
        if (cat_opts.cmd->parsed()) {
            return cmd_cat(merge_config(cat_opts));
        }
        if (chi_opts.cmd->parsed()) {
            return cmd_chi(merge_config(chi_opts));
        }
        if (wigner_opts.cmd->parsed()) {
            return cmd_wigner(merge_config(wigner_opts));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
