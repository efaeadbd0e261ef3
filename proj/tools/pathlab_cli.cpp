// Command line front end: every subcommand runs one scenario, writes its
// data plus a report.csv with pass/fail rows into --out, and exits 0 on
// pass, 1 on a numerical failure, 2 on a usage error. Data files carry no
// timestamps, so equal configs and seeds give byte-identical bodies; run
// metadata lives in the run.json sidecar.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pathlab/grid.hpp"
#include "pathlab/hamiltonian.hpp"
#include "pathlab/info.hpp"
#include "pathlab/io.hpp"
#include "pathlab/mera.hpp"
#include "pathlab/paths.hpp"
#include "pathlab/spectral.hpp"
#include "pathlab/ssr.hpp"

namespace {

using namespace pathlab;

struct CommonOpts {
    std::string out = "out";
    std::string format = "csv";
    std::string config;
    std::uint64_t seed = 1;

    std::size_t n = 128;
    double length = 12.0;
    std::string boundary = "periodic";
    std::string potential = "free";
    std::string potential_file;
    double omega = 1.0;
    double depth = 1.0;
    double width = 2.0;
    double vconst = 0.5;
    double mass = 1.0;
    double hbar = 1.0;
    double dtau = 1.0;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("--out", o.out, "output directory")
        ->capture_default_str();
    sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
    sub->add_option("--format", o.format, "data file format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--n", o.n, "grid sites")->capture_default_str();
    sub->add_option("--length", o.length, "box side")->capture_default_str();
    sub->add_option("--boundary", o.boundary, "boundary condition")
        ->check(CLI::IsMember({"periodic", "reflecting"}))
        ->capture_default_str();
    sub->add_option("--potential", o.potential, "potential kind")
        ->check(CLI::IsMember(
            {"free", "harmonic", "well", "constant", "tabulated"}))
        ->capture_default_str();
    sub->add_option("--potential-file", o.potential_file,
                    "csv with one value per site (kind: tabulated)");
    sub->add_option("--omega", o.omega, "harmonic frequency")
        ->capture_default_str();
    sub->add_option("--well-depth", o.depth, "well depth")
        ->capture_default_str();
    sub->add_option("--well-width", o.width, "well width")
        ->capture_default_str();
    sub->add_option("--vconst", o.vconst, "constant potential value")
        ->capture_default_str();
    sub->add_option("--mass", o.mass, "particle mass")->capture_default_str();
    sub->add_option("--hbar", o.hbar, "action quantum")
        ->capture_default_str();
    sub->add_option("--dtau", o.dtau, "euclidean time span")
        ->capture_default_str();
    sub->add_option("--config", o.config,
                    "key=value file; command line flags win")
        ->check(CLI::ExistingFile);
}

// Applies a key=value config file to a parsed subcommand. Only options the
// user left untouched are filled in, so command line flags always win.
// (CLI11 2.4 never reads config files attached to subcommands itself: the
// processing step only runs on the root app.)
void apply_config_file(CLI::App* sub, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot read " + path);
    const CLI::ConfigINI ini;
    for (const CLI::ConfigItem& item : ini.from_config(f)) {
        if (!item.parents.empty() && item.parents != std::vector<std::string>{
                                         sub->get_name()})
            throw std::invalid_argument("config: unknown section for key '" +
                                        item.fullname() + "'");
        if (item.name == "config")
            throw std::invalid_argument("config: files cannot nest");
        CLI::Option* op = sub->get_option_no_throw("--" + item.name);
        if (op == nullptr || !op->get_configurable())
            throw std::invalid_argument("config: unknown key '" + item.name +
                                        "'");
        if (op->count() > 0) continue;
        for (const std::string& input : item.inputs) op->add_result(input);
        op->run_callback();
    }
}

SpatialGrid make_grid(const CommonOpts& o) {
    return SpatialGrid(o.n, o.length,
                       o.boundary == "periodic" ? Boundary::Periodic
                                                : Boundary::Reflecting);
}

Potential make_potential(const CommonOpts& o) {
    if (o.potential == "free") return Potential::free();
    if (o.potential == "harmonic") return Potential::harmonic(o.omega, o.mass);
    if (o.potential == "well") return Potential::square_well(o.depth, o.width);
    if (o.potential == "constant")
        return Potential::tabulated(std::vector<double>(o.n, o.vconst));
    const Eigen::MatrixXd table = read_matrix_csv(o.potential_file);
    std::vector<double> v(static_cast<std::size_t>(table.rows()));
    for (Eigen::Index i = 0; i < table.rows(); ++i)
        v[static_cast<std::size_t>(i)] = table(i, 0);
    return Potential::tabulated(std::move(v));
}

// Pass/fail ledger of one run; written as report.csv next to the data.
class Report {
  public:
    void add(const std::string& check, double measured, double tolerance,
             const std::string& oracle, bool pass) {
        rows_.push_back({check, measured, tolerance, oracle, pass});
        std::cout << (pass ? "PASS " : "FAIL ") << check
                  << " measured=" << format_double(measured)
                  << " tol=" << format_double(tolerance) << '\n';
        all_ &= pass;
    }

    bool all_pass() const { return all_; }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path);
        f << "check,measured,tolerance,oracle,status\n";
        for (const auto& r : rows_)
            f << r.check << ',' << format_double(r.measured) << ','
              << format_double(r.tolerance) << ',' << r.oracle << ','
              << (r.pass ? "pass" : "fail") << '\n';
    }

  private:
    struct Row {
        std::string check;
        double measured;
        double tolerance;
        std::string oracle;
        bool pass;
    };
    std::vector<Row> rows_;
    bool all_ = true;
};

std::string data_path(const CommonOpts& o, const std::string& stem) {
    return o.out + "/" + stem + "." + o.format;
}

void write_data(const CommonOpts& o, const std::string& stem,
                const Eigen::MatrixXd& m,
                const std::vector<std::string>& columns) {
    if (o.format == "csv")
        write_matrix_csv(data_path(o, stem), m, columns);
    else
        write_json(data_path(o, stem), matrix_to_json(m));
}

void write_data(const CommonOpts& o, const std::string& stem,
                const Eigen::MatrixXcd& m,
                const std::vector<std::string>& columns) {
    if (o.format == "csv")
        write_matrix_csv(data_path(o, stem), m, columns);
    else
        write_json(data_path(o, stem), matrix_to_json(m));
}

std::vector<std::string> index_columns(Eigen::Index n,
                                       const std::string& stem) {
    std::vector<std::string> cols;
    cols.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j)
        cols.push_back(stem + std::to_string(j));
    return cols;
}

int finish(const CommonOpts& o, const std::string& subcommand,
           const Report& report, const nlohmann::json& params) {
    report.write(o.out + "/report.csv");
    write_json(o.out + "/run.json",
               run_sidecar("pathlab", subcommand, o.seed, params));
    std::cout << (report.all_pass() ? "all checks passed"
                                    : "numerical check failed")
              << "; report " << o.out << "/report.csv" << '\n';
    return report.all_pass() ? 0 : 1;
}

nlohmann::json common_params(const CommonOpts& o) {
    nlohmann::json j = {{"n", o.n},           {"length", o.length},
                        {"boundary", o.boundary}, {"potential", o.potential},
                        {"mass", o.mass},     {"hbar", o.hbar},
                        {"dtau", o.dtau},     {"format", o.format}};
    if (o.potential == "harmonic") j["omega"] = o.omega;
    if (o.potential == "well") {
        j["well_depth"] = o.depth;
        j["well_width"] = o.width;
    }
    if (o.potential == "constant") j["vconst"] = o.vconst;
    if (o.potential == "tabulated") j["potential_file"] = o.potential_file;
    return j;
}

int run_spectral(const CommonOpts& o) {
    const SpatialGrid grid = make_grid(o);
    const Potential pot = make_potential(o);
    const ModelParams params{o.hbar, o.mass};
    const Eigen::MatrixXd h = build_hamiltonian(grid, pot, params);
    const SpectralDecomposition spec = diagonalize(h, grid, params);
    const Eigen::MatrixXd kernel = imaginary_kernel(spec, o.dtau);

    write_data(o, "eigenvalues", Eigen::MatrixXd(spec.energies), {"energy"});
    write_data(o, "kernel", kernel,
               index_columns(kernel.cols(), "from_site_"));

    Report report;
    const double sym = (h - h.transpose()).cwiseAbs().maxCoeff();
    report.add("hamiltonian_symmetric", sym, 1e-12, "transpose", sym <= 1e-12);
    const Eigen::VectorXd masses = mass_profile(kernel, grid);
    if (pot.kind() == PotentialKind::Free) {
        const double err = (masses.array() - 1.0).abs().maxCoeff();
        report.add("mass_conserved", err, 1e-10, "unit mass", err <= 1e-10);
    } else {
        const double excess = masses.maxCoeff() - 1.0;
        const bool ok = pot.sample(grid).minCoeff() >= 0.0
                            ? excess <= 1e-10
                            : true;  // wells legitimately amplify mass
        report.add("mass_not_amplified", excess, 1e-10, "unit mass", ok);
    }
    return finish(o, "spectral", report, common_params(o));
}

int run_trotter(const CommonOpts& o, std::size_t factors, double tol) {
    const SpatialGrid grid = make_grid(o);
    const Potential pot = make_potential(o);
    const ModelParams params{o.hbar, o.mass};
    const SpectralDecomposition spec =
        diagonalize(build_hamiltonian(grid, pot, params), grid, params);
    const Eigen::MatrixXd exact = imaginary_kernel(spec, o.dtau);

    Eigen::MatrixXd ladder(0, 2);
    std::vector<double> errs;
    std::size_t rung = factors;
    std::vector<std::size_t> rungs;
    while (rung >= 1) {
        rungs.push_back(rung);
        if (rung % 2 != 0 || rungs.size() >= 5) break;
        rung /= 2;
    }
    std::reverse(rungs.begin(), rungs.end());
    ladder.resize(static_cast<Eigen::Index>(rungs.size()), 2);
    Eigen::MatrixXd finest;
    for (std::size_t r = 0; r < rungs.size(); ++r) {
        const Eigen::MatrixXd approx =
            trotter_kernel(grid, pot, params, o.dtau, rungs[r]);
        const double err =
            ((approx - exact).cwiseAbs().array() / exact.cwiseAbs().array())
                .maxCoeff();
        ladder(static_cast<Eigen::Index>(r), 0) = double(rungs[r]);
        ladder(static_cast<Eigen::Index>(r), 1) = err;
        errs.push_back(err);
        if (rungs[r] == factors) finest = approx;
    }
    write_data(o, "trotter_kernel", finest,
               index_columns(finest.cols(), "from_site_"));
    write_data(o, "convergence", ladder, {"factors", "max_rel_err"});

    Report report;
    report.add("split_step_error", errs.back(), tol, "eigenbasis kernel",
               errs.back() <= tol);
    if (errs.size() >= 2) {
        const double order = std::log2(errs[errs.size() - 2] / errs.back());
        report.add("convergence_order", order, 0.5, "err ratio vs 2.0",
                   std::abs(order - 2.0) <= 0.5);
    }
    nlohmann::json params_json = common_params(o);
    params_json["factors"] = factors;
    return finish(o, "trotter", report, params_json);
}

int run_mc(const CommonOpts& o, std::uint64_t n_paths, std::size_t steps,
           std::size_t start, bool serial) {
    const SpatialGrid grid = make_grid(o);
    const Potential pot = make_potential(o);
    const ModelParams params{o.hbar, o.mass};
    if (start >= grid.n) start = grid.n / 2;
    const EnsembleTally tally =
        sample_paths(grid, pot, params, o.dtau, steps, n_paths, start, o.seed,
                     serial ? Exec::Serial : Exec::Parallel);
    const Eigen::MatrixX2d est = mc_kernel_estimate(tally, grid, params);

    const SpectralDecomposition spec =
        diagonalize(build_hamiltonian(grid, pot, params), grid, params);
    const Eigen::MatrixXd exact = imaginary_kernel(spec, o.dtau);

    Eigen::MatrixXd table(grid.n, 4);
    table.col(0) = grid.sites();
    table.col(1) = est.col(0);
    table.col(2) = est.col(1);
    table.col(3) = exact.col(static_cast<Eigen::Index>(start));
    write_data(o, "mc_estimate", table,
               {"q", "density", "stderr", "reference"});

    Report report;
    std::size_t occupied = 0;
    std::size_t within = 0;
    for (std::size_t j = 0; j < grid.n; ++j) {
        if (tally.bin_counts[j] == 0) continue;
        ++occupied;
        const auto i = static_cast<Eigen::Index>(j);
        if (std::abs(est(i, 0) - table(i, 3)) <= 4.0 * est(i, 1)) ++within;
    }
    const double frac =
        occupied == 0 ? 0.0 : double(within) / double(occupied);
    report.add("bins_within_4sigma", frac, 0.95, "eigenbasis kernel",
               frac >= 0.95);
    const double survival =
        double(tally.n_survived) / double(tally.n_paths);
    const double mass_mc = survival * std::exp(-o.dtau * tally.v_offset /
                                               params.hbar);
    const double mass_ref = total_mass(exact, grid, start);
    const double se_mass =
        std::sqrt(survival * (1.0 - survival) / double(tally.n_paths)) *
        std::exp(-o.dtau * tally.v_offset / params.hbar);
    const double band = 4.0 * se_mass + 1e-12;
    report.add("survival_matches_mass", std::abs(mass_mc - mass_ref), band,
               "eigenbasis kernel", std::abs(mass_mc - mass_ref) <= band);
    nlohmann::json params_json = common_params(o);
    params_json["paths"] = n_paths;
    params_json["steps"] = steps;
    params_json["start"] = start;
    params_json["serial"] = serial;
    return finish(o, "mc", report, params_json);
}

int run_mass(const CommonOpts& o) {
    const SpatialGrid grid = make_grid(o);
    const Potential pot = make_potential(o);
    const ModelParams params{o.hbar, o.mass};
    const SpectralDecomposition spec =
        diagonalize(build_hamiltonian(grid, pot, params), grid, params);
    const Eigen::MatrixXd kernel = imaginary_kernel(spec, o.dtau);
    const Eigen::VectorXd masses = mass_profile(kernel, grid);

    Eigen::MatrixXd table(grid.n, 2);
    table.col(0) = grid.sites();
    table.col(1) = masses;
    write_data(o, "mass", table, {"q0", "mass"});

    Report report;
    if (pot.kind() == PotentialKind::Free) {
        const double err = (masses.array() - 1.0).abs().maxCoeff();
        report.add("mass_conserved", err, 1e-10, "unit mass", err <= 1e-10);
    } else {
        const Eigen::VectorXd v = pot.sample(grid);
        // weight can only leak downward against exp(-dtau*Vmin/hbar)
        const double bound =
            std::exp(-o.dtau * v.minCoeff() / params.hbar) + 1e-10;
        const double worst = masses.maxCoeff();
        report.add("mass_bounded", worst, bound, "potential floor",
                   worst <= bound);
    }
    return finish(o, "mass", report, common_params(o));
}

int run_mera(const CommonOpts& o, std::size_t bottom, std::size_t top,
             bool bell) {
    const MeraNetwork net = bell ? bell_network(bottom)
                                 : random_network(bottom, top, o.seed);
    const Eigen::VectorXcd state = apply_network(net);
    const ClassicalMixedState mixed = classicalize(state);
    const double entropy = measurement_entropy_bits(mixed);
    const double a_tn = double(net.disentangler_count());

    write_json(o.out + "/network.json", network_to_json(net));
    Eigen::MatrixXd probs(mixed.probs.size(), 1);
    probs.col(0) = mixed.probs;
    write_data(o, "classical_probs", probs, {"p"});

    Report report;
    double worst_iso = 0.0, worst_ent = 0.0;
    for (const auto& layer : net.layers) {
        for (const auto& iso : layer.isometries)
            worst_iso = std::max({worst_iso, isometry_residual(iso),
                                  projector_residual(iso)});
        for (const auto& ent : layer.entanglers)
            worst_ent = std::max(worst_ent, unitarity_residual(ent));
    }
    report.add("isometry_residual", worst_iso, 1e-12, "defining relations",
               worst_iso <= 1e-12);
    report.add("entangler_unitarity", worst_ent, 1e-12, "defining relations",
               worst_ent <= 1e-12);
    const double norm_err = std::abs(mixed.probs.sum() - 1.0);
    report.add("probability_norm", norm_err, 1e-10, "unit norm",
               norm_err <= 1e-10);
    // Shannon entropy of the outcome distribution is at most one bit per
    // boundary site. The sharper bound a_tn applies to interval
    // entanglement (checked below), not to the full measured distribution.
    report.add("entropy_within_capacity", entropy, double(bottom) + 1e-9,
               "one bit per boundary site", entropy <= double(bottom) + 1e-9);
    double worst_gap = 0.0;  // most negative cut-minus-entropy margin
    for (std::size_t len = 1; len <= bottom / 2; ++len)
        for (std::size_t first = 0; first < bottom; ++first) {
            const double cut = minimal_cut_entropy(net, first, len);
            const double ent =
                interval_entanglement_bits(state, bottom, first, len);
            worst_gap = std::min(worst_gap, cut - ent);
        }
    report.add("min_cut_bounds_entanglement", worst_gap, -1e-9,
               "schmidt spectrum", worst_gap >= -1e-9);
    if (bell) {
        // one bit per disentangler, saturated: entropy == a_tn exactly
        report.add("bell_entropy_bits", std::abs(entropy - a_tn), 1e-12,
                   "pair count", std::abs(entropy - a_tn) <= 1e-12);
    }
    const double spin = -std::log(std::max(mixed.probs.minCoeff(), 1e-300));
    const double combined = combined_action(net.disentangler_count(), spin,
                                            o.hbar);
    const double expect_combined = bulk_action(net.disentangler_count(),
                                               o.hbar) + spin;
    report.add("combined_action_consistent",
               std::abs(combined - expect_combined), 1e-15, "definition",
               std::abs(combined - expect_combined) <= 1e-15);
    nlohmann::json params_json = {{"bottom", bottom},
                                  {"top", top},
                                  {"bell", bell},
                                  {"hbar", o.hbar},
                                  {"format", o.format}};
    return finish(o, "mera", report, params_json);
}

int run_ssr(const CommonOpts& o, std::size_t cell_sites) {
    const SpatialGrid grid = make_grid(o);
    const PlanckCellBasis basis = build_planck_basis(grid, cell_sites, o.hbar);

    StreamRng rng(o.seed, 0);
    Eigen::MatrixXcd a(basis.n, basis.n);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            a(i, j) = rng.complex_normal();
    a = Eigen::MatrixXcd((a + a.adjoint()) / 2.0);

    const RedefinedObservable pinched = project_observable(basis, a);
    write_data(o, "observable", pinched.matrix,
               index_columns(pinched.matrix.cols(), "col_"));

    Report report;
    const double unit =
        (basis.u.adjoint() * basis.u -
         Eigen::MatrixXcd::Identity(basis.n, basis.n))
            .cwiseAbs()
            .maxCoeff();
    report.add("basis_unitary", unit, 1e-12, "identity", unit <= 1e-12);
    const double violation = ssr_violation(basis, pinched.matrix);
    report.add("pinched_respects_ssr", violation, 1e-12, "cell basis",
               violation <= 1e-12);
    const RedefinedObservable twice =
        project_observable(basis, pinched.matrix);
    const double idem =
        (twice.matrix - pinched.matrix).cwiseAbs().maxCoeff();
    report.add("pinching_idempotent", idem, 1e-12, "second application",
               idem <= 1e-12);
    const Eigen::MatrixXcd prop_r =
        cell_propagator(basis, pinched.matrix, o.dtau, TimeMode::Real);
    const Eigen::MatrixXcd prop_i =
        cell_propagator(basis, pinched.matrix, o.dtau, TimeMode::Imaginary);
    const double offdiag =
        std::max(ssr_violation(basis, prop_r), ssr_violation(basis, prop_i));
    report.add("propagator_cell_diagonal", offdiag, 1e-12, "cell basis",
               offdiag <= 1e-12);
    const double area_err =
        std::abs(basis.cell_area() -
                 2.0 * 3.141592653589793238462643383279502884 * o.hbar);
    report.add("cell_area_quantum", area_err, 0.0, "2*pi*hbar",
               area_err == 0.0);
    nlohmann::json params_json = common_params(o);
    params_json["cell_sites"] = cell_sites;
    return finish(o, "ssr", report, params_json);
}

int run_wick(const CommonOpts& o, double dt) {
    const SpatialGrid grid = make_grid(o);
    const Potential pot = make_potential(o);
    const ModelParams params{o.hbar, o.mass};
    const SpectralDecomposition spec =
        diagonalize(build_hamiltonian(grid, pot, params), grid, params);

    const Eigen::MatrixXcd direct = real_kernel(spec, dt);
    // the same kernel reached by rotating the euclidean weight: tau = i dt
    const Eigen::MatrixXcd rotated =
        complex_kernel(spec, std::complex<double>(0.0, dt));
    write_data(o, "real_kernel", direct,
               index_columns(direct.cols(), "from_site_"));

    Report report;
    const double rot = (direct - rotated).cwiseAbs().maxCoeff();
    report.add("rotation_consistency", rot, 1e-12, "complex-time kernel",
               rot <= 1e-12);
    const Eigen::MatrixXcd gram =
        grid.dq * grid.dq * (direct.adjoint() * direct);
    const double unit =
        (gram - Eigen::MatrixXcd::Identity(grid.n, grid.n))
            .cwiseAbs()
            .maxCoeff();
    report.add("kernel_unitary", unit, 1e-10, "identity", unit <= 1e-10);
    nlohmann::json params_json = common_params(o);
    params_json["dt"] = dt;
    return finish(o, "wick", report, params_json);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice path-integral toolkit"};
    app.require_subcommand(1);

    CommonOpts spectral_o;
    auto* spectral_cmd =
        app.add_subcommand("spectral", "eigenbasis and euclidean kernel");
    add_common(spectral_cmd, spectral_o);

    CommonOpts trotter_o;
    std::size_t factors = 256;
    double trotter_tol = 1e-3;
    auto* trotter_cmd =
        app.add_subcommand("trotter", "split-step kernel and convergence");
    add_common(trotter_cmd, trotter_o);
    trotter_cmd->add_option("--factors", factors, "split-step count")
        ->capture_default_str();
    trotter_cmd->add_option("--tol", trotter_tol, "max relative error")
        ->capture_default_str();

    CommonOpts mc_o;
    std::uint64_t n_paths = 100000;
    std::size_t steps = 128;
    std::size_t start = std::size_t(-1);
    bool serial = false;
    auto* mc_cmd =
        app.add_subcommand("mc", "walker estimate of a kernel column");
    add_common(mc_cmd, mc_o);
    mc_cmd->add_option("--paths", n_paths, "walker count")
        ->capture_default_str();
    mc_cmd->add_option("--steps", steps, "steps per walker")
        ->capture_default_str();
    mc_cmd->add_option("--start", start, "start site (default: center)");
    mc_cmd->add_flag("--serial", serial, "single-threaded reference sampler");

    CommonOpts mass_o;
    auto* mass_cmd =
        app.add_subcommand("mass", "kernel mass per start point");
    add_common(mass_cmd, mass_o);

    CommonOpts mera_o;
    std::size_t bottom = 8;
    std::size_t top = 1;
    bool bell = false;
    auto* mera_cmd =
        app.add_subcommand("mera", "tensor network state and entropies");
    add_common(mera_cmd, mera_o);
    mera_cmd->add_option("--bottom", bottom, "boundary sites")
        ->capture_default_str();
    mera_cmd->add_option("--top", top, "top sites")->capture_default_str();
    mera_cmd->add_flag("--bell", bell, "bell-pair preset network");

    CommonOpts ssr_o;
    std::size_t cell_sites = 4;
    auto* ssr_cmd =
        app.add_subcommand("ssr", "phase-space cell superselection");
    add_common(ssr_cmd, ssr_o);
    ssr_cmd->add_option("--cell-sites", cell_sites, "sites per cell")
        ->capture_default_str();

    CommonOpts wick_o;
    double dt = 1.0;
    auto* wick_cmd =
        app.add_subcommand("wick", "unitary kernel from the euclidean one");
    add_common(wick_cmd, wick_o);
    wick_cmd->add_option("--dt", dt, "real time span")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* active_cmd = nullptr;
        const CommonOpts* active = nullptr;
        if (spectral_cmd->parsed()) active_cmd = spectral_cmd, active = &spectral_o;
        if (trotter_cmd->parsed()) active_cmd = trotter_cmd, active = &trotter_o;
        if (mc_cmd->parsed()) active_cmd = mc_cmd, active = &mc_o;
        if (mass_cmd->parsed()) active_cmd = mass_cmd, active = &mass_o;
        if (mera_cmd->parsed()) active_cmd = mera_cmd, active = &mera_o;
        if (ssr_cmd->parsed()) active_cmd = ssr_cmd, active = &ssr_o;
        if (wick_cmd->parsed()) active_cmd = wick_cmd, active = &wick_o;
        if (!active->config.empty())
            apply_config_file(active_cmd, active->config);
        std::filesystem::create_directories(active->out);

        if (spectral_cmd->parsed()) return run_spectral(spectral_o);
        if (trotter_cmd->parsed())
            return run_trotter(trotter_o, factors, trotter_tol);
        if (mc_cmd->parsed())
            return run_mc(mc_o, n_paths, steps, start, serial);
        if (mass_cmd->parsed()) return run_mass(mass_o);
        if (mera_cmd->parsed()) return run_mera(mera_o, bottom, top, bell);
        if (ssr_cmd->parsed()) return run_ssr(ssr_o, cell_sites);
        if (wick_cmd->parsed()) return run_wick(wick_o, dt);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
