#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "kirkwood/quasiprob.hpp"
#include "kirkwood/sampling.hpp"
#include "kirkwood/types.hpp"

namespace kirkwood {

inline constexpr const char* kToolName = "kirkwood";
inline constexpr const char* kToolVersion = "0.1.0";

// Self-describing text document: a kind tag, the Hilbert-space dimension, a
// payload in the kind's schema, and free-form metadata (seed, tolerances,
// provenance). Complex numbers are [re, im] pairs, matrices row-major nested
// arrays. Payloads validate against their module's invariants on load.
struct Document {
    std::string kind;
    int dim = 0;
    nlohmann::json payload;
    nlohmann::json metadata;
};

nlohmann::json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const nlohmann::json& j);

// Standard metadata block: tool name/version and the active tolerance set.
nlohmann::json base_metadata(const Tolerances& tol);

nlohmann::json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json real_vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const nlohmann::json& j, const std::string& field);

Document make_state_document(const DensityMatrix& state, nlohmann::json metadata);
Document make_basis_document(const OrthonormalBasis& basis, nlohmann::json metadata);
Document make_pvm_document(const PVM& pvm, nlohmann::json metadata);
Document make_kirkwood_document(const KirkwoodTable& table, nlohmann::json metadata);
Document make_counts_document(const JointCountTable& counts, int dim, nlohmann::json metadata);
Document make_report_document(int dim, nlohmann::json payload, nlohmann::json metadata);

DensityMatrix load_state(const Document& doc, const Tolerances& tol = {});
OrthonormalBasis load_basis(const Document& doc, const Tolerances& tol = {});
PVM load_pvm(const Document& doc, const Tolerances& tol = {});
KirkwoodTable load_kirkwood(const Document& doc, const Tolerances& tol = {});
JointCountTable load_counts(const Document& doc);

std::string serialize_document(const Document& doc);
Document parse_document(const std::string& text);

void save_document(const Document& doc, const std::filesystem::path& path);
Document load_document(const std::filesystem::path& path);

} // namespace kirkwood
