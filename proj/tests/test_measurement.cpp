#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "kirkwood/measurement.hpp"
#include "kirkwood/verify.hpp"

using namespace kirkwood;
using testutil::from_oracle;
using testutil::to_oracle;

TEST_CASE("born probabilities of the maximally mixed qubit are uniform") {
    const DensityMatrix rho = validate_density(ComplexMatrix::Identity(2, 2) / 2.0);
    const RealVector p = born_probabilities(rho, testutil::z_pvm());
    CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("born probabilities of an eigenstate are deterministic") {
    const RealVector p = born_probabilities(testutil::pure_state(testutil::ket0()),
                                            testutil::z_pvm());
    CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(p(1)) < 1e-12);
}

TEST_CASE("born probabilities of |+> in the Z basis") {
    // Oracle: Tr(|+><+| |k><k|) by direct arithmetic.
    const oracle::Vec plus = {testutil::inv_sqrt2, testutil::inv_sqrt2};
    const oracle::Mat rho = oracle::outer(plus, plus);
    const oracle::Mat p0 = {{1.0, 0.0}, {0.0, 0.0}};
    const double expected = oracle::trace(oracle::mul(rho, p0)).real();
    REQUIRE(expected == doctest::Approx(0.5).epsilon(1e-14));

    const RealVector p = born_probabilities(testutil::pure_state(testutil::ket_plus()),
                                            testutil::z_pvm());
    CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("born probabilities sum to one on random instances") {
    SplitMix64 rng(23);
    for (int dim : {2, 5, 9}) {
        const DensityMatrix rho = random_mixed_state(dim, rng);
        const PVM pvm = random_degenerate_pvm(dim, rng);
        const RealVector p = born_probabilities(rho, pvm);
        CHECK(p.minCoeff() > -1e-10);
        CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("nonselective reduction leaves a commuting state alone") {
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 0.7;
    diag(1, 1) = 0.3;
    const DensityMatrix rho = validate_density(diag);
    const Projector proj = testutil::z_pvm().projector(0);
    CHECK(max_abs(lueders_nonselective(rho, proj).matrix() - rho.matrix()) < 1e-12);
}

TEST_CASE("nonselective reduction of |+><+| by |0><0| gives I/2") {
    // Oracle: P rho P + Q rho Q expanded by hand.
    const oracle::Vec plus = {testutil::inv_sqrt2, testutil::inv_sqrt2};
    const oracle::Mat rho = oracle::outer(plus, plus);
    const oracle::Mat p = {{1.0, 0.0}, {0.0, 0.0}};
    const oracle::Mat q = oracle::sub(oracle::identity(2), p);
    const oracle::Mat expected =
        oracle::add(oracle::mul(oracle::mul(p, rho), p), oracle::mul(oracle::mul(q, rho), q));
    REQUIRE(oracle::max_abs_diff(expected, oracle::scale(0.5, oracle::identity(2))) < 1e-14);

    const DensityMatrix reduced = lueders_nonselective(testutil::pure_state(testutil::ket_plus()),
                                                       testutil::z_pvm().projector(0));
    CHECK(max_abs(reduced.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
}

TEST_CASE("nonselective reduction is idempotent and commutes with the projector") {
    SplitMix64 rng(31);
    for (int dim : {2, 4, 6}) {
        const DensityMatrix rho = random_mixed_state(dim, rng);
        const PVM pvm = random_degenerate_pvm(dim, rng);
        const Projector& proj = pvm.projector(0);
        const DensityMatrix once = lueders_nonselective(rho, proj);
        const DensityMatrix twice = lueders_nonselective(once, proj);
        CHECK(max_abs(once.matrix() - twice.matrix()) < 1e-12);
        CHECK(max_abs(proj.matrix() * once.matrix() - once.matrix() * proj.matrix()) < 1e-12);
        CHECK(once.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("selective reduction onto a rank-1 projector erases the state") {
    SplitMix64 rng(37);
    const DensityMatrix rho = random_mixed_state(2, rng);
    const Projector proj = testutil::x_pvm().projector(0);
    const DensityMatrix collapsed = lueders_selective(rho, proj);
    CHECK(max_abs(collapsed.matrix() - proj.matrix()) < 1e-10);
}

TEST_CASE("selective reduction fixes proj/rank") {
    SplitMix64 rng(41);
    const PVM pvm = random_degenerate_pvm(6, rng);
    const Projector& proj = pvm.projector(0);
    REQUIRE(proj.rank() >= 2);
    const DensityMatrix rho = validate_density(proj.matrix() / double(proj.rank()));
    CHECK(max_abs(lueders_selective(rho, proj).matrix() - rho.matrix()) < 1e-12);
}

TEST_CASE("selective reduction on an orthogonal branch throws") {
    CHECK_THROWS_AS(lueders_selective(testutil::pure_state(testutil::ket1()),
                                      testutil::z_pvm().projector(0)),
                    ZeroProbabilityBranch);
}

TEST_CASE("selective output is supported on the projector range") {
    SplitMix64 rng(43);
    const DensityMatrix rho = random_mixed_state(5, rng);
    const PVM pvm = random_degenerate_pvm(5, rng);
    const Projector& proj = pvm.projector(0);
    const DensityMatrix collapsed = lueders_selective(rho, proj);
    CHECK(max_abs(proj.matrix() * collapsed.matrix() * proj.matrix() - collapsed.matrix()) <
          1e-12);
}

TEST_CASE("conditional probability with the identity projector is one") {
    SplitMix64 rng(47);
    const DensityMatrix rho = random_mixed_state(3, rng);
    const Projector identity = Projector::validated(ComplexMatrix::Identity(3, 3));
    const Projector a = pvm_from_basis(random_basis(3, rng)).projector(1);
    CHECK(conditional_probability(rho, a, identity) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditional probability after collapse to |0> of measuring |+>") {
    // Oracle: Tr(rho A B A) / Tr(rho A) with rho = A = |0><0|, B = |+><+|.
    const oracle::Mat a = {{1.0, 0.0}, {0.0, 0.0}};
    const oracle::Vec plus = {testutil::inv_sqrt2, testutil::inv_sqrt2};
    const oracle::Mat b = oracle::outer(plus, plus);
    const oracle::Mat aba = oracle::mul(oracle::mul(a, b), a);
    const double expected = oracle::trace(oracle::mul(a, aba)).real() /
                            oracle::trace(oracle::mul(a, a)).real();
    REQUIRE(expected == doctest::Approx(0.5).epsilon(1e-14));

    const double value =
        conditional_probability(testutil::pure_state(testutil::ket0()),
                                testutil::z_pvm().projector(0), testutil::x_pvm().projector(0));
    CHECK(value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("conditional probability vanishes for orthogonal commuting outcomes") {
    const DensityMatrix rho = validate_density(ComplexMatrix::Identity(2, 2) / 2.0);
    const double value = conditional_probability(rho, testutil::z_pvm().projector(0),
                                                 testutil::z_pvm().projector(1));
    CHECK(std::abs(value) < 1e-12);
}

TEST_CASE("conditional probability equals Born on the reduced state") {
    SplitMix64 rng(53);
    const DensityMatrix rho = random_mixed_state(4, rng);
    const PVM a_pvm = random_rank1_pvm(4, rng);
    const PVM b_pvm = random_degenerate_pvm(4, rng);
    const DensityMatrix reduced = lueders_selective(rho, a_pvm.projector(2));
    const double direct = conditional_probability(rho, a_pvm.projector(2), b_pvm.projector(0));
    const double via_reduction =
        trace_product(reduced.matrix(), b_pvm.projector(0).matrix()).real();
    CHECK(direct == doctest::Approx(via_reduction).epsilon(1e-12));
}

TEST_CASE("wigner_joint collapse-then-uniform example") {
    // Oracle: Tr(rho A_m B_n A_m) for rho = |0><0|, A = Z, B = X.
    const oracle::Mat rho = {{1.0, 0.0}, {0.0, 0.0}};
    const oracle::Vec plus = {testutil::inv_sqrt2, testutil::inv_sqrt2};
    const oracle::Vec minus = {testutil::inv_sqrt2, -testutil::inv_sqrt2};
    const oracle::Mat projectors_a[2] = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}};
    const oracle::Mat projectors_b[2] = {oracle::outer(plus, plus), oracle::outer(minus, minus)};
    double expected[2][2];
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            const oracle::Mat aba =
                oracle::mul(oracle::mul(projectors_a[m], projectors_b[n]), projectors_a[m]);
            expected[m][n] = oracle::trace(oracle::mul(rho, aba)).real();
        }
    }
    REQUIRE(expected[0][0] == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(expected[0][1] == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(std::abs(expected[1][0]) < 1e-14);
    REQUIRE(std::abs(expected[1][1]) < 1e-14);

    const JointProbabilityTable table = wigner_joint(testutil::pure_state(testutil::ket0()),
                                                     testutil::z_pvm(), testutil::x_pvm());
    CHECK(table.probability(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(table.probability(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(table.probability(1, 0) < 1e-12);
    CHECK(table.probability(1, 1) < 1e-12);
}

TEST_CASE("wigner_joint equals the ordinary joint distribution for commuting PVMs") {
    SplitMix64 rng(59);
    const OrthonormalBasis basis = random_basis(4, rng);
    const PVM a = pvm_from_basis(basis);
    const DensityMatrix rho = random_mixed_state(4, rng);
    const JointProbabilityTable table = wigner_joint(rho, a, a);
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            const double plain =
                trace_product(rho.matrix(),
                              (a.projector(m).matrix() * a.projector(n).matrix()).eval())
                    .real();
            CHECK(table.entries()(m, n) == doctest::Approx(plain).epsilon(1e-12));
            CHECK(table.probability(m, n) >= 0.0);
        }
    }
}

TEST_CASE("wigner_joint marginals: rows from rho, columns from the reduced state") {
    SplitMix64 rng(61);
    for (int dim : {2, 3, 5}) {
        const DensityMatrix rho = random_mixed_state(dim, rng);
        const PVM a = random_rank1_pvm(dim, rng);
        const PVM b = random_degenerate_pvm(dim, rng);
        const JointProbabilityTable table = wigner_joint(rho, a, b);
        CHECK(std::abs(table.entries().sum() - 1.0) < 1e-10);

        const RealVector row_sums = table.entries().rowwise().sum();
        CHECK((row_sums - born_probabilities(rho, a)).cwiseAbs().maxCoeff() < 1e-10);

        const DensityMatrix reduced = lueders_nonselective_all(rho, a);
        const RealVector col_sums = table.entries().colwise().sum().transpose();
        CHECK((col_sums - born_probabilities(reduced, b)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("phase rotation at angle zero is the identity") {
    const PhaseRotation r = phase_rotation(2, testutil::z_pvm(), 0, 0.0);
    CHECK(max_abs(r.matrix() - ComplexMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("phase rotation at angle pi flips the target sign") {
    // 1 - 2 A_0 on the qubit.
    const PhaseRotation r = phase_rotation(2, testutil::z_pvm(), 0, std::numbers::pi);
    ComplexMatrix expected = ComplexMatrix::Identity(2, 2);
    expected(0, 0) = -1.0;
    CHECK(max_abs(r.matrix() - expected) < 1e-15);
}

TEST_CASE("phase rotations are unitary and leave other projectors fixed") {
    SplitMix64 rng(67);
    const PVM pvm = random_degenerate_pvm(5, rng);
    for (int m = 0; m < pvm.size(); ++m) {
        const PhaseRotation r = phase_rotation(5, pvm, m, 0.83);
        CHECK(max_abs(r.matrix() * r.matrix().adjoint() - ComplexMatrix::Identity(5, 5)) < 1e-12);
        for (int n = 0; n < pvm.size(); ++n) {
            if (n == m) {
                continue;
            }
            const Projector rotated = rotate_projector(r, pvm.projector(n));
            CHECK(max_abs(rotated.matrix() - pvm.projector(n).matrix()) < 1e-12);
        }
    }
}

TEST_CASE("phase rotations compose additively in the angle") {
    SplitMix64 rng(71);
    const PVM pvm = random_degenerate_pvm(4, rng);
    const PhaseRotation r1 = phase_rotation(4, pvm, 1, 0.4);
    const PhaseRotation r2 = phase_rotation(4, pvm, 1, 1.1);
    const PhaseRotation r12 = phase_rotation(4, pvm, 1, 1.5);
    CHECK(max_abs(r1.matrix() * r2.matrix() - r12.matrix()) < 1e-12);
}

TEST_CASE("phase rotation rejects an out-of-range index") {
    CHECK_THROWS_AS(phase_rotation(2, testutil::z_pvm(), 2, 1.0), IndexOutOfRange);
}

TEST_CASE("rotating |+><+| by the quarter-turn on |0><0|") {
    // Oracle: R^dag B R with R = diag(i, 1), the projector effectively
    // measured when the rotation acts on the state first.
    const oracle::Mat r = {{oracle::C(0.0, 1.0), 0.0}, {0.0, 1.0}};
    const oracle::Vec plus = {testutil::inv_sqrt2, testutil::inv_sqrt2};
    const oracle::Mat b = oracle::outer(plus, plus);
    const oracle::Mat rotated = oracle::mul(oracle::mul(oracle::dagger(r), b), r);
    const oracle::Mat expected = {{0.5, oracle::C(0.0, -0.5)}, {oracle::C(0.0, 0.5), 0.5}};
    REQUIRE(oracle::max_abs_diff(rotated, expected) < 1e-14);

    const PhaseRotation rotation =
        phase_rotation(2, testutil::z_pvm(), 0, std::numbers::pi / 2.0);
    const Projector result = rotate_projector(rotation, testutil::x_pvm().projector(0));
    CHECK(max_abs(result.matrix() - from_oracle(expected)) < 1e-12);
    CHECK(result.rank() == 1);
}

TEST_CASE("rotated projectors keep their rank and projector-ness") {
    SplitMix64 rng(73);
    const PVM a = random_rank1_pvm(6, rng);
    const PVM b = random_degenerate_pvm(6, rng);
    const PhaseRotation r = phase_rotation(6, a, 3, 1.9);
    for (int n = 0; n < b.size(); ++n) {
        const Projector rotated = rotate_projector(r, b.projector(n));
        CHECK(rotated.rank() == b.projector(n).rank());
        CHECK_NOTHROW(Projector::validated(rotated.matrix()));
    }
}

TEST_CASE("randomization identity holds for qubit rank-1 projectors") {
    SplitMix64 rng(79);
    for (int i = 0; i < 5; ++i) {
        const DensityMatrix rho = random_mixed_state(2, rng);
        const PVM pvm = random_rank1_pvm(2, rng);
        CHECK(randomization_identity_check(rho, pvm, 0) < 1e-10);
        CHECK(randomization_identity_check(rho, pvm, 1) < 1e-10);
    }
}

TEST_CASE("randomization identity holds for a degenerate projector in dim 4") {
    SplitMix64 rng(83);
    const DensityMatrix rho = random_mixed_state(4, rng);
    const PVM pvm = random_degenerate_pvm(4, rng);
    REQUIRE(pvm.projector(0).rank() >= 2);
    for (int m = 0; m < pvm.size(); ++m) {
        CHECK(randomization_identity_check(rho, pvm, m) < 1e-10);
    }
}

TEST_CASE("randomization identity fixes the maximally mixed state") {
    const DensityMatrix rho = validate_density(ComplexMatrix::Identity(3, 3) / 3.0);
    SplitMix64 rng(89);
    const PVM pvm = random_rank1_pvm(3, rng);
    CHECK(randomization_identity_check(rho, pvm, 1) < 1e-10);
}
