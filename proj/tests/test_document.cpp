#include <doctest.h>

#include "helpers.hpp"
#include "kirkwood/document.hpp"
#include "kirkwood/quasiprob.hpp"
#include "kirkwood/sampling.hpp"
#include "kirkwood/verify.hpp"

using namespace kirkwood;

TEST_CASE("state documents round trip exactly") {
    SplitMix64 rng(401);
    for (int dim : {2, 3, 7}) {
        const DensityMatrix rho = random_mixed_state(dim, rng);
        const Document doc = make_state_document(rho, base_metadata({}));
        const Document reloaded = parse_document(serialize_document(doc));
        const DensityMatrix back = load_state(reloaded);
        CHECK(max_abs(back.matrix() - rho.matrix()) == 0.0);
        // Serialization is stable byte for byte.
        CHECK(serialize_document(reloaded) == serialize_document(doc));
    }
}

TEST_CASE("basis documents round trip exactly") {
    SplitMix64 rng(409);
    const OrthonormalBasis basis = random_basis(4, rng);
    const Document doc = make_basis_document(basis, base_metadata({}));
    const OrthonormalBasis back = load_basis(parse_document(serialize_document(doc)));
    CHECK(max_abs(back.columns() - basis.columns()) == 0.0);
}

TEST_CASE("pvm documents round trip exactly, labels included") {
    ComplexMatrix obs = ComplexMatrix::Zero(3, 3);
    obs.diagonal() << 2.0, -1.0, 2.0;
    const PVM pvm = pvm_from_observable(obs);
    const Document doc = make_pvm_document(pvm, base_metadata({}));
    const PVM back = load_pvm(parse_document(serialize_document(doc)));
    REQUIRE(back.size() == pvm.size());
    REQUIRE(back.labels().has_value());
    for (int m = 0; m < pvm.size(); ++m) {
        CHECK(max_abs(back.projector(m).matrix() - pvm.projector(m).matrix()) == 0.0);
        CHECK((*back.labels())[m] == (*pvm.labels())[m]);
    }
}

TEST_CASE("kirkwood table documents round trip exactly") {
    SplitMix64 rng(419);
    const DensityMatrix rho = random_mixed_state(3, rng);
    const PVM a = random_rank1_pvm(3, rng);
    const PVM b = random_rank1_pvm(3, rng);
    const KirkwoodTable table = kirkwood::kirkwood(rho, a, b);
    const Document doc = make_kirkwood_document(table, base_metadata({}));
    const KirkwoodTable back = load_kirkwood(parse_document(serialize_document(doc)));
    CHECK(max_abs(back.entries() - table.entries()) == 0.0);
    CHECK((back.a_marginal_reference() - table.a_marginal_reference()).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK(back.max_marginal_deviation() == table.max_marginal_deviation());
}

TEST_CASE("joint count documents round trip exactly") {
    SplitMix64 rng(421);
    const DensityMatrix rho = random_mixed_state(2, rng);
    const JointCountTable counts =
        simulate_successive(rho, testutil::z_pvm(), testutil::x_pvm(), 1000, 77);
    const Document doc = make_counts_document(counts, 2, base_metadata({}));
    const JointCountTable back = load_counts(parse_document(serialize_document(doc)));
    CHECK((back.counts() - counts.counts()).cwiseAbs().sum() == 0);
    CHECK(back.trials() == counts.trials());
    CHECK(back.seed() == counts.seed());
}

TEST_CASE("report documents round trip exactly") {
    nlohmann::json payload{{"families", nlohmann::json::array()}, {"all_pass", true}};
    const Document doc = make_report_document(4, payload, base_metadata({}));
    const std::string text = serialize_document(doc);
    CHECK(serialize_document(parse_document(text)) == text);
}

TEST_CASE("tolerances round trip through metadata") {
    Tolerances tol;
    tol.herm = 1e-9;
    tol.recon = 1e-7;
    const Tolerances back = tolerances_from_json(tolerances_to_json(tol));
    CHECK(back.herm == tol.herm);
    CHECK(back.norm == tol.norm);
    CHECK(back.psd == tol.psd);
    CHECK(back.degeneracy == tol.degeneracy);
    CHECK(back.prob == tol.prob);
    CHECK(back.overlap == tol.overlap);
    CHECK(back.recon == tol.recon);
}

TEST_CASE("parse errors name the offending field") {
    CHECK_THROWS_WITH_AS(parse_document("{\"dim\": 2}"), doctest::Contains("kind"), ParseError);
    CHECK_THROWS_WITH_AS(parse_document("{\"kind\": \"state\"}"), doctest::Contains("dim"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_document("not json"), doctest::Contains("malformed"), ParseError);

    Document doc;
    doc.kind = "state";
    doc.dim = 2;
    doc.payload = nlohmann::json{{"wrong", 1}};
    CHECK_THROWS_WITH_AS(load_state(doc), doctest::Contains("matrix"), ParseError);

    doc.payload = nlohmann::json{{"matrix", nlohmann::json::array({1, 2})}};
    CHECK_THROWS_WITH_AS(load_state(doc), doctest::Contains("matrix"), ParseError);
}

TEST_CASE("loading validates the payload invariants") {
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = 0.7;
    bad(1, 1) = 0.4; // trace 1.1
    Document doc;
    doc.kind = "state";
    doc.dim = 2;
    doc.payload = nlohmann::json{{"matrix", complex_matrix_to_json(bad)}};
    CHECK_THROWS_AS(load_state(doc), NotUnitTrace);

    Document basis_doc;
    basis_doc.kind = "basis";
    basis_doc.dim = 2;
    basis_doc.payload = nlohmann::json{
        {"vectors", nlohmann::json::array({
                        nlohmann::json::array({nlohmann::json::array({1.0, 0.0}),
                                               nlohmann::json::array({0.0, 0.0})}),
                        nlohmann::json::array({nlohmann::json::array({1.0, 0.0}),
                                               nlohmann::json::array({0.0, 0.0})}),
                    })}};
    CHECK_THROWS_AS(load_basis(basis_doc), NotOrthonormal);
}

TEST_CASE("kind mismatches are parse errors") {
    SplitMix64 rng(431);
    const Document doc = make_state_document(random_mixed_state(2, rng), base_metadata({}));
    CHECK_THROWS_AS(load_basis(doc), ParseError);
}
