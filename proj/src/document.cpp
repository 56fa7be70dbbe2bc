#include "kirkwood/document.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace kirkwood {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const std::string& field) {
    const auto it = j.find(field);
    if (it == j.end()) {
        throw ParseError("missing field '" + field + "'");
    }
    return *it;
}

double require_double(const json& j, const std::string& field) {
    const json& value = require_field(j, field);
    if (!value.is_number()) {
        throw ParseError("field '" + field + "' must be a number");
    }
    return value.get<double>();
}

std::int64_t require_int(const json& j, const std::string& field) {
    const json& value = require_field(j, field);
    if (!value.is_number_integer()) {
        throw ParseError("field '" + field + "' must be an integer");
    }
    return value.get<std::int64_t>();
}

Complex complex_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("field '" + field + "' must hold complex numbers as [re, im]");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

} // namespace

json tolerances_to_json(const Tolerances& tol) {
    return json{{"herm", tol.herm},       {"norm", tol.norm},       {"psd", tol.psd},
                {"degeneracy", tol.degeneracy}, {"prob", tol.prob}, {"overlap", tol.overlap},
                {"recon", tol.recon}};
}

Tolerances tolerances_from_json(const json& j) {
    Tolerances tol;
    tol.herm = require_double(j, "herm");
    tol.norm = require_double(j, "norm");
    tol.psd = require_double(j, "psd");
    tol.degeneracy = require_double(j, "degeneracy");
    tol.prob = require_double(j, "prob");
    tol.overlap = require_double(j, "overlap");
    tol.recon = require_double(j, "recon");
    return tol;
}

json base_metadata(const Tolerances& tol) {
    return json{{"tool", kToolName}, {"version", kToolVersion},
                {"tolerances", tolerances_to_json(tol)}};
}

json complex_matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix complex_matrix_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) {
        throw ParseError("field '" + field + "' must be a nonempty nested array");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        throw ParseError("field '" + field + "' must be a nonempty nested array");
    }
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw ParseError("field '" + field + "' has ragged rows");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k], field);
        }
    }
    return m;
}

json real_vector_to_json(const RealVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

RealVector real_vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) {
        throw ParseError("field '" + field + "' must be an array of numbers");
    }
    RealVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) {
            throw ParseError("field '" + field + "' must be an array of numbers");
        }
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Document make_state_document(const DensityMatrix& state, json metadata) {
    Document doc;
    doc.kind = "state";
    doc.dim = state.dim();
    doc.payload = json{{"matrix", complex_matrix_to_json(state.matrix())}};
    doc.metadata = std::move(metadata);
    return doc;
}

Document make_basis_document(const OrthonormalBasis& basis, json metadata) {
    Document doc;
    doc.kind = "basis";
    doc.dim = basis.dim();
    json vectors = json::array();
    for (int i = 0; i < basis.dim(); ++i) {
        json amplitudes = json::array();
        const ComplexVector v = basis.vector(i);
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            amplitudes.push_back(complex_to_json(v(k)));
        }
        vectors.push_back(std::move(amplitudes));
    }
    doc.payload = json{{"vectors", std::move(vectors)}};
    doc.metadata = std::move(metadata);
    return doc;
}

Document make_pvm_document(const PVM& pvm, json metadata) {
    Document doc;
    doc.kind = "pvm";
    doc.dim = pvm.dim();
    json projectors = json::array();
    for (int m = 0; m < pvm.size(); ++m) {
        projectors.push_back(complex_matrix_to_json(pvm.projector(m).matrix()));
    }
    doc.payload = json{{"projectors", std::move(projectors)}};
    if (pvm.labels()) {
        doc.payload["labels"] = *pvm.labels();
    }
    doc.metadata = std::move(metadata);
    return doc;
}

Document make_kirkwood_document(const KirkwoodTable& table, json metadata) {
    Document doc;
    doc.kind = "kirkwood_table";
    doc.dim = table.a_pvm().dim();
    doc.payload = json{
        {"entries", complex_matrix_to_json(table.entries())},
        {"a_pvm", make_pvm_document(table.a_pvm(), json::object()).payload},
        {"b_pvm", make_pvm_document(table.b_pvm(), json::object()).payload},
        {"a_marginals", real_vector_to_json(table.a_marginal_reference())},
        {"b_marginals", real_vector_to_json(table.b_marginal_reference())},
    };
    doc.metadata = std::move(metadata);
    return doc;
}

Document make_counts_document(const JointCountTable& counts, int dim, json metadata) {
    Document doc;
    doc.kind = "joint_counts";
    doc.dim = dim;
    json rows = json::array();
    for (int m = 0; m < counts.rows(); ++m) {
        json row = json::array();
        for (int n = 0; n < counts.cols(); ++n) {
            row.push_back(counts.counts()(m, n));
        }
        rows.push_back(std::move(row));
    }
    doc.payload = json{{"counts", std::move(rows)},
                       {"trials", counts.trials()},
                       {"seed", counts.seed()}};
    doc.metadata = std::move(metadata);
    return doc;
}

Document make_report_document(int dim, json payload, json metadata) {
    Document doc;
    doc.kind = "report";
    doc.dim = dim;
    doc.payload = std::move(payload);
    doc.metadata = std::move(metadata);
    return doc;
}

namespace {

void require_kind(const Document& doc, const std::string& kind) {
    if (doc.kind != kind) {
        throw ParseError("expected a document of kind '" + kind + "', got '" + doc.kind + "'");
    }
}

PVM pvm_from_payload(const json& payload, const Tolerances& tol) {
    const json& matrices = require_field(payload, "projectors");
    if (!matrices.is_array() || matrices.empty()) {
        throw ParseError("field 'projectors' must be a nonempty array");
    }
    std::vector<Projector> projectors;
    projectors.reserve(matrices.size());
    for (const json& m : matrices) {
        projectors.push_back(Projector::validated(complex_matrix_from_json(m, "projectors"), tol));
    }
    if (payload.contains("labels")) {
        const RealVector parsed = real_vector_from_json(payload["labels"], "labels");
        std::vector<double> values(parsed.data(), parsed.data() + parsed.size());
        return PVM::validated(std::move(projectors), std::move(values), tol);
    }
    return PVM::validated(std::move(projectors), std::nullopt, tol);
}

} // namespace

DensityMatrix load_state(const Document& doc, const Tolerances& tol) {
    require_kind(doc, "state");
    const ComplexMatrix m = complex_matrix_from_json(require_field(doc.payload, "matrix"), "matrix");
    if (m.rows() != doc.dim) {
        throw ParseError("field 'matrix' does not match the declared dim");
    }
    return DensityMatrix::validated(m, tol);
}

OrthonormalBasis load_basis(const Document& doc, const Tolerances& tol) {
    require_kind(doc, "basis");
    const json& vectors = require_field(doc.payload, "vectors");
    if (!vectors.is_array() || static_cast<int>(vectors.size()) != doc.dim) {
        throw ParseError("field 'vectors' must list exactly dim vectors");
    }
    ComplexMatrix columns(doc.dim, doc.dim);
    for (int i = 0; i < doc.dim; ++i) {
        const json& amplitudes = vectors[static_cast<std::size_t>(i)];
        if (!amplitudes.is_array() || static_cast<int>(amplitudes.size()) != doc.dim) {
            throw ParseError("field 'vectors' has a vector of wrong length");
        }
        for (int k = 0; k < doc.dim; ++k) {
            columns(k, i) = complex_from_json(amplitudes[static_cast<std::size_t>(k)], "vectors");
        }
    }
    return OrthonormalBasis::validated(columns, tol);
}

PVM load_pvm(const Document& doc, const Tolerances& tol) {
    require_kind(doc, "pvm");
    PVM pvm = pvm_from_payload(doc.payload, tol);
    if (pvm.dim() != doc.dim) {
        throw ParseError("field 'projectors' does not match the declared dim");
    }
    return pvm;
}

KirkwoodTable load_kirkwood(const Document& doc, const Tolerances& tol) {
    require_kind(doc, "kirkwood_table");
    PVM a_pvm = pvm_from_payload(require_field(doc.payload, "a_pvm"), tol);
    PVM b_pvm = pvm_from_payload(require_field(doc.payload, "b_pvm"), tol);
    if (a_pvm.dim() != doc.dim || b_pvm.dim() != doc.dim) {
        throw ParseError("embedded PVMs do not match the declared dim");
    }
    ComplexMatrix entries =
        complex_matrix_from_json(require_field(doc.payload, "entries"), "entries");
    RealVector a_marginals =
        real_vector_from_json(require_field(doc.payload, "a_marginals"), "a_marginals");
    RealVector b_marginals =
        real_vector_from_json(require_field(doc.payload, "b_marginals"), "b_marginals");
    return KirkwoodTable(std::move(entries), std::move(a_pvm), std::move(b_pvm),
                         std::move(a_marginals), std::move(b_marginals));
}

JointCountTable load_counts(const Document& doc) {
    require_kind(doc, "joint_counts");
    const json& rows = require_field(doc.payload, "counts");
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty()) {
        throw ParseError("field 'counts' must be a nonempty nested array");
    }
    CountMatrix counts(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t m = 0; m < rows.size(); ++m) {
        if (!rows[m].is_array() || rows[m].size() != rows[0].size()) {
            throw ParseError("field 'counts' has ragged rows");
        }
        for (std::size_t n = 0; n < rows[m].size(); ++n) {
            if (!rows[m][n].is_number_integer()) {
                throw ParseError("field 'counts' must hold integers");
            }
            counts(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
                rows[m][n].get<std::int64_t>();
        }
    }
    const std::int64_t trials = require_int(doc.payload, "trials");
    const std::uint64_t seed = require_field(doc.payload, "seed").get<std::uint64_t>();
    return JointCountTable(std::move(counts), trials, seed);
}

std::string serialize_document(const Document& doc) {
    const json j{{"kind", doc.kind},
                 {"dim", doc.dim},
                 {"payload", doc.payload},
                 {"metadata", doc.metadata}};
    return j.dump(2) + "\n";
}

Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("document root must be an object");
    }
    Document doc;
    const json& kind = require_field(j, "kind");
    if (!kind.is_string()) {
        throw ParseError("field 'kind' must be a string");
    }
    doc.kind = kind.get<std::string>();
    doc.dim = static_cast<int>(require_int(j, "dim"));
    doc.payload = require_field(j, "payload");
    doc.metadata = j.contains("metadata") ? j["metadata"] : json::object();
    return doc;
}

void save_document(const Document& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::generic, "cannot open '" + path.string() + "' for writing");
    }
    out << serialize_document(doc);
    if (!out) {
        throw Error(ErrorCode::generic, "failed writing '" + path.string() + "'");
    }
}

Document load_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

} // namespace kirkwood
