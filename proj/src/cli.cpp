#include "kirkwood/cli.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "kirkwood/linalg.hpp"
#include "kirkwood/measurement.hpp"
#include "kirkwood/quasiprob.hpp"
#include "kirkwood/reconstruct.hpp"
#include "kirkwood/sampling.hpp"

namespace kirkwood::cli {

namespace {

using nlohmann::json;

void require_dim(int dim) {
    if (dim < 2) {
        std::ostringstream msg;
        msg << "dimension must be >= 2, got " << dim;
        throw InvalidDimension(msg.str());
    }
}

json provenance(std::initializer_list<std::filesystem::path> inputs) {
    json files = json::array();
    for (const auto& path : inputs) {
        files.push_back(path.string());
    }
    return files;
}

struct LoadedPair {
    OrthonormalBasis a;
    OrthonormalBasis b;
};

LoadedPair load_pair(const std::filesystem::path& basis_a_file,
                     const std::filesystem::path& basis_b_file, const Tolerances& tol) {
    OrthonormalBasis a = load_basis(load_document(basis_a_file), tol);
    OrthonormalBasis b = load_basis(load_document(basis_b_file), tol);
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << "basis dimensions differ: " << a.dim() << " (" << basis_a_file.string() << ") vs "
            << b.dim() << " (" << basis_b_file.string() << ")";
        throw DimMismatch(msg.str());
    }
    return LoadedPair{std::move(a), std::move(b)};
}

} // namespace

int exit_code_for(const Error& error) { return static_cast<int>(error.code()); }

Document run_gen_state(int dim, const std::string& kind, std::uint64_t seed,
                       const Tolerances& tol) {
    require_dim(dim);
    SplitMix64 rng(seed);
    DensityMatrix state = [&] {
        if (kind == "pure") {
            return random_pure_state(dim, rng, tol);
        }
        if (kind == "mixed") {
            return random_mixed_state(dim, rng, tol);
        }
        if (kind == "maximally_mixed") {
            return DensityMatrix::validated(
                ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), tol);
        }
        throw ParseError("unknown state kind '" + kind + "'");
    }();
    json metadata = base_metadata(tol);
    metadata["command"] = "gen-state";
    metadata["state_kind"] = kind;
    metadata["seed"] = seed;
    return make_state_document(state, std::move(metadata));
}

Document run_gen_basis(int dim, const std::string& kind, std::uint64_t seed,
                       const Tolerances& tol) {
    require_dim(dim);
    SplitMix64 rng(seed);
    OrthonormalBasis basis = [&] {
        if (kind == "standard") {
            return OrthonormalBasis::validated(ComplexMatrix::Identity(dim, dim), tol);
        }
        if (kind == "schwinger_b") {
            return schwinger_pair(dim).b();
        }
        if (kind == "random_unitary") {
            return random_basis(dim, rng, tol);
        }
        throw ParseError("unknown basis kind '" + kind + "'");
    }();
    json metadata = base_metadata(tol);
    metadata["command"] = "gen-basis";
    metadata["basis_kind"] = kind;
    metadata["seed"] = seed;
    return make_basis_document(basis, std::move(metadata));
}

Document run_kirkwood(const std::filesystem::path& state_file,
                      const std::filesystem::path& basis_a_file,
                      const std::filesystem::path& basis_b_file, const Tolerances& tol) {
    const DensityMatrix state = load_state(load_document(state_file), tol);
    const LoadedPair pair = load_pair(basis_a_file, basis_b_file, tol);
    const KirkwoodTable table =
        kirkwood(state, pvm_from_basis(pair.a, tol), pvm_from_basis(pair.b, tol));

    json metadata = base_metadata(tol);
    metadata["command"] = "kirkwood";
    metadata["inputs"] = provenance({state_file, basis_a_file, basis_b_file});
    metadata["marginal_check"] = json{
        {"max_marginal_deviation", table.max_marginal_deviation()},
        {"max_imaginary_marginal", table.max_imaginary_marginal()},
    };
    return make_kirkwood_document(table, std::move(metadata));
}

Document run_reconstruct(const std::filesystem::path& table_file,
                         const std::filesystem::path& basis_a_file,
                         const std::filesystem::path& basis_b_file, bool fourier,
                         const Tolerances& tol) {
    const KirkwoodTable table = load_kirkwood(load_document(table_file), tol);
    const LoadedPair loaded = load_pair(basis_a_file, basis_b_file, tol);
    const BasisPair pair(loaded.a, loaded.b);

    ReconstructionDiagnostics diagnostics;
    DensityMatrix state = [&] {
        if (fourier) {
            const int dim = pair.dim();
            const BasisPair reference = schwinger_pair(dim);
            const double deviation = max_abs(pair.overlaps() - reference.overlaps());
            if (deviation > tol.overlap) {
                std::ostringstream msg;
                msg << "--fourier requires the Schwinger pair; overlaps deviate by " << deviation;
                throw Error(ErrorCode::generic, msg.str());
            }
            diagnostics.min_overlap = 1.0 / std::sqrt(static_cast<double>(dim));
            return reconstruct_fourier(table, dim, tol);
        }
        return reconstruct_density(table, pair, tol, &diagnostics);
    }();

    json metadata = base_metadata(tol);
    metadata["command"] = "reconstruct";
    metadata["fourier"] = fourier;
    metadata["inputs"] = provenance({table_file, basis_a_file, basis_b_file});
    metadata["reconstruction_check"] = json{
        {"min_overlap", diagnostics.min_overlap},
        {"raw_hermiticity", diagnostics.raw_hermiticity},
        {"physicality_residual", diagnostics.physicality_residual},
    };
    return make_state_document(state, std::move(metadata));
}

Document run_simulate(const std::filesystem::path& state_file,
                      const std::filesystem::path& basis_a_file,
                      const std::filesystem::path& basis_b_file, std::int64_t trials,
                      std::uint64_t seed, const Tolerances& tol) {
    const DensityMatrix state = load_state(load_document(state_file), tol);
    const LoadedPair pair = load_pair(basis_a_file, basis_b_file, tol);
    const PVM a_pvm = pvm_from_basis(pair.a, tol);
    const PVM b_pvm = pvm_from_basis(pair.b, tol);

    const JointCountTable counts = simulate_successive(state, a_pvm, b_pvm, trials, seed, tol);
    const JointProbabilityTable exact = wigner_joint(state, a_pvm, b_pvm, tol);

    // Worst cell deviation and its multiple of the binomial sigma.
    const RealMatrix frequencies = counts.frequencies();
    double max_deviation = 0.0;
    double max_sigma_multiple = 0.0;
    for (int m = 0; m < exact.rows(); ++m) {
        for (int n = 0; n < exact.cols(); ++n) {
            const double p = exact.probability(m, n);
            const double deviation = std::abs(frequencies(m, n) - p);
            max_deviation = std::max(max_deviation, deviation);
            const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
            if (sigma > 0.0) {
                max_sigma_multiple = std::max(max_sigma_multiple, deviation / sigma);
            } else if (deviation > 0.0) {
                max_sigma_multiple = std::numeric_limits<double>::infinity();
            }
        }
    }

    json metadata = base_metadata(tol);
    metadata["command"] = "simulate";
    metadata["inputs"] = provenance({state_file, basis_a_file, basis_b_file});
    metadata["comparison"] = json{
        {"max_frequency_deviation", max_deviation},
        {"max_sigma_multiple", max_sigma_multiple},
    };
    return make_counts_document(counts, state.dim(), std::move(metadata));
}

Document run_verify(const VerifyOptions& options) {
    const std::vector<FamilyResult> results = run_verification(options);
    json families = json::array();
    bool all_pass = true;
    for (const FamilyResult& family : results) {
        families.push_back(json{
            {"name", family.name},
            {"pass", family.pass},
            {"inconclusive", family.inconclusive},
            {"worst_residual", family.worst_residual},
            {"threshold", family.threshold},
            {"detail", family.detail},
        });
        all_pass = all_pass && family.pass;
    }
    json payload{{"families", std::move(families)}, {"all_pass", all_pass}};

    json metadata = base_metadata(options.tol);
    metadata["command"] = "verify";
    metadata["seed"] = options.seed;
    metadata["instances"] = options.instances;
    metadata["min_dim"] = options.min_dim;
    metadata["max_dim"] = options.max_dim;
    metadata["inject_fault"] = options.inject_fault;
    return make_report_document(options.max_dim, std::move(payload), std::move(metadata));
}

bool report_all_pass(const Document& report) {
    if (report.kind != "report" || !report.payload.contains("all_pass")) {
        throw ParseError("missing field 'all_pass'");
    }
    return report.payload["all_pass"].get<bool>();
}

} // namespace kirkwood::cli
