// Command-line front end: generate states and bases, compute Kirkwood
// tables, reconstruct states, simulate successive measurements, and run the
// invariant verification suites. All I/O goes through self-describing JSON
// documents; see README.md for the schema and exit codes.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "kirkwood/cli.hpp"

namespace {

using kirkwood::Tolerances;

struct TolArgs {
    double base = -1.0;
    double degeneracy = -1.0;
    double prob = -1.0;
    double overlap = -1.0;
    double recon = -1.0;

    Tolerances resolve() const {
        Tolerances tol;
        if (base > 0.0) {
            tol.herm = base;
            tol.norm = base;
            tol.psd = base;
        }
        if (degeneracy > 0.0) {
            tol.degeneracy = degeneracy;
        }
        if (prob > 0.0) {
            tol.prob = prob;
        }
        if (overlap > 0.0) {
            tol.overlap = overlap;
        }
        if (recon > 0.0) {
            tol.recon = recon;
        }
        return tol;
    }
};

void add_tol_options(CLI::App* cmd, TolArgs& args) {
    cmd->add_option("--tol", args.base,
                    "Override the validation tolerance (hermiticity, trace, positivity)");
    cmd->add_option("--tol-degeneracy", args.degeneracy, "Eigenvalue cluster gap");
    cmd->add_option("--tol-prob", args.prob, "Zero-probability branch threshold");
    cmd->add_option("--tol-overlap", args.overlap, "Complementarity threshold");
    cmd->add_option("--tol-recon", args.recon, "Reconstruction residual budget");
}

void emit(const kirkwood::Document& doc, const std::string& out) {
    kirkwood::save_document(doc, out);
    std::cout << doc.kind << " document written to " << out << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Successive projective measurements: Kirkwood quasiprobabilities, state "
                 "reconstruction, and Monte-Carlo simulation"};
    app.require_subcommand(1);

    // gen-state
    int gs_dim = 2;
    std::string gs_kind = "mixed";
    std::uint64_t gs_seed = 0;
    std::string gs_out = "state.json";
    TolArgs gs_tol;
    auto* gen_state = app.add_subcommand("gen-state", "Generate a density matrix document");
    gen_state->add_option("dim", gs_dim, "Hilbert-space dimension")->required();
    gen_state->add_option("--kind", gs_kind, "pure | mixed | maximally_mixed")
        ->check(CLI::IsMember({"pure", "mixed", "maximally_mixed"}));
    gen_state->add_option("--seed", gs_seed, "RNG seed");
    gen_state->add_option("--out", gs_out, "Output file");
    add_tol_options(gen_state, gs_tol);

    // gen-basis
    int gb_dim = 2;
    std::string gb_kind = "random_unitary";
    std::uint64_t gb_seed = 0;
    std::string gb_out = "basis.json";
    TolArgs gb_tol;
    auto* gen_basis = app.add_subcommand("gen-basis", "Generate an orthonormal basis document");
    gen_basis->add_option("dim", gb_dim, "Hilbert-space dimension")->required();
    gen_basis->add_option("--kind", gb_kind, "standard | schwinger_b | random_unitary")
        ->check(CLI::IsMember({"standard", "schwinger_b", "random_unitary"}));
    gen_basis->add_option("--seed", gb_seed, "RNG seed");
    gen_basis->add_option("--out", gb_out, "Output file");
    add_tol_options(gen_basis, gb_tol);

    // kirkwood
    std::string kw_state, kw_basis_a, kw_basis_b;
    std::string kw_out = "table.json";
    TolArgs kw_tol;
    auto* kw = app.add_subcommand("kirkwood", "Kirkwood table of a state over two bases");
    kw->add_option("--state", kw_state, "State document")->required();
    kw->add_option("--basis-a", kw_basis_a, "First-measurement basis")->required();
    kw->add_option("--basis-b", kw_basis_b, "Second-measurement basis")->required();
    kw->add_option("--out", kw_out, "Output file");
    add_tol_options(kw, kw_tol);

    // reconstruct
    std::string rc_table, rc_basis_a, rc_basis_b;
    std::string rc_out = "reconstructed.json";
    bool rc_fourier = false;
    TolArgs rc_tol;
    auto* rc = app.add_subcommand("reconstruct", "Invert a Kirkwood table to a density matrix");
    rc->add_option("--table", rc_table, "Kirkwood table document")->required();
    rc->add_option("--basis-a", rc_basis_a, "First basis")->required();
    rc->add_option("--basis-b", rc_basis_b, "Second basis")->required();
    rc->add_flag("--fourier", rc_fourier, "Use the DFT inversion (Schwinger pairs only)");
    rc->add_option("--out", rc_out, "Output file");
    add_tol_options(rc, rc_tol);

    // simulate
    std::string sm_state, sm_basis_a, sm_basis_b;
    std::int64_t sm_trials = 100000;
    std::uint64_t sm_seed = 0;
    std::string sm_out = "counts.json";
    TolArgs sm_tol;
    auto* sm = app.add_subcommand("simulate", "Monte-Carlo successive measurements");
    sm->add_option("--state", sm_state, "State document")->required();
    sm->add_option("--basis-a", sm_basis_a, "First-measurement basis")->required();
    sm->add_option("--basis-b", sm_basis_b, "Second-measurement basis")->required();
    sm->add_option("--trials", sm_trials, "Number of trials")->check(CLI::PositiveNumber);
    sm->add_option("--seed", sm_seed, "RNG seed");
    sm->add_option("--out", sm_out, "Output file");
    add_tol_options(sm, sm_tol);

    // verify
    kirkwood::VerifyOptions vo;
    vo.seed = 1;
    std::string vf_out;
    TolArgs vf_tol;
    auto* vf = app.add_subcommand("verify", "Run the invariant verification families");
    vf->add_option("--min-dim", vo.min_dim, "Smallest dimension")->check(CLI::Range(2, 64));
    vf->add_option("--max-dim", vo.max_dim, "Largest dimension")->check(CLI::Range(2, 64));
    vf->add_option("--instances", vo.instances, "Random instances per family")
        ->check(CLI::PositiveNumber);
    vf->add_option("--seed", vo.seed, "Master seed");
    vf->add_flag("--inject-fault", vo.inject_fault,
                 "Skip state hermitization to prove the suite catches it");
    vf->add_option("--out", vf_out, "Optional report file");
    add_tol_options(vf, vf_tol);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_state->parsed()) {
            emit(kirkwood::cli::run_gen_state(gs_dim, gs_kind, gs_seed, gs_tol.resolve()), gs_out);
        } else if (gen_basis->parsed()) {
            emit(kirkwood::cli::run_gen_basis(gb_dim, gb_kind, gb_seed, gb_tol.resolve()), gb_out);
        } else if (kw->parsed()) {
            const auto doc = kirkwood::cli::run_kirkwood(kw_state, kw_basis_a, kw_basis_b,
                                                         kw_tol.resolve());
            emit(doc, kw_out);
            std::cout << "max marginal deviation "
                      << doc.metadata["marginal_check"]["max_marginal_deviation"].get<double>()
                      << ", max imaginary marginal "
                      << doc.metadata["marginal_check"]["max_imaginary_marginal"].get<double>()
                      << "\n";
        } else if (rc->parsed()) {
            const auto doc = kirkwood::cli::run_reconstruct(rc_table, rc_basis_a, rc_basis_b,
                                                            rc_fourier, rc_tol.resolve());
            emit(doc, rc_out);
            std::cout << "min overlap "
                      << doc.metadata["reconstruction_check"]["min_overlap"].get<double>()
                      << ", physicality residual "
                      << doc.metadata["reconstruction_check"]["physicality_residual"].get<double>()
                      << "\n";
        } else if (sm->parsed()) {
            const auto doc = kirkwood::cli::run_simulate(sm_state, sm_basis_a, sm_basis_b,
                                                         sm_trials, sm_seed, sm_tol.resolve());
            emit(doc, sm_out);
            std::cout << "max |frequency - probability| "
                      << doc.metadata["comparison"]["max_frequency_deviation"].get<double>()
                      << " (" << doc.metadata["comparison"]["max_sigma_multiple"].get<double>()
                      << " sigma)\n";
        } else if (vf->parsed()) {
            vo.tol = vf_tol.resolve();
            const auto report = kirkwood::cli::run_verify(vo);
            for (const auto& family : report.payload["families"]) {
                const bool pass = family["pass"].get<bool>();
                const bool inconclusive = family["inconclusive"].get<bool>();
                std::cout << (pass ? (inconclusive ? "[INCONCLUSIVE] " : "[PASS] ") : "[FAIL] ")
                          << family["name"].get<std::string>() << " worst residual "
                          << family["worst_residual"].get<double>() << " (threshold "
                          << family["threshold"].get<double>() << "): "
                          << family["detail"].get<std::string>() << "\n";
            }
            if (!vf_out.empty()) {
                kirkwood::save_document(report, vf_out);
                std::cout << "report written to " << vf_out << "\n";
            }
            if (!kirkwood::cli::report_all_pass(report)) {
                return kirkwood::cli::kVerifyFailedExit;
            }
        }
    } catch (const kirkwood::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kirkwood::cli::exit_code_for(e);
    }
    return 0;
}
