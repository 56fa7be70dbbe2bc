#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kirkwood/quasiprob.hpp"
#include "kirkwood/sampling.hpp"
#include "kirkwood/verify.hpp"

using namespace kirkwood;

TEST_CASE("a deterministic chain puts every count in one cell") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket0());
    const JointCountTable counts =
        simulate_successive(rho, testutil::z_pvm(), testutil::z_pvm(), 5000, 42);
    CHECK(counts.counts()(0, 0) == 5000);
    CHECK(counts.counts().sum() == 5000);
}

TEST_CASE("simulation is deterministic per seed") {
    SplitMix64 rng(307);
    const DensityMatrix rho = random_mixed_state(3, rng);
    const PVM a = random_rank1_pvm(3, rng);
    const PVM b = random_rank1_pvm(3, rng);
    // 100000 trials crosses a block boundary, exercising stream derivation.
    const JointCountTable first = simulate_successive(rho, a, b, 100000, 7);
    const JointCountTable second = simulate_successive(rho, a, b, 100000, 7);
    CHECK((first.counts() - second.counts()).cwiseAbs().sum() == 0);
    CHECK(first.counts().sum() == 100000);

    const JointCountTable other_seed = simulate_successive(rho, a, b, 100000, 8);
    CHECK((first.counts() - other_seed.counts()).cwiseAbs().sum() != 0);
}

TEST_CASE("simulated frequencies converge to the joint probabilities") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket0());
    const std::int64_t trials = 200000;
    const JointCountTable counts =
        simulate_successive(rho, testutil::z_pvm(), testutil::x_pvm(), trials, 12);
    const RealMatrix frequencies = counts.frequencies();
    // Exact table is [[1/2, 1/2], [0, 0]]; 5 sigma of a fair binomial.
    const double bound = 5.0 * std::sqrt(0.25 / double(trials));
    CHECK(std::abs(frequencies(0, 0) - 0.5) < bound);
    CHECK(std::abs(frequencies(0, 1) - 0.5) < bound);
    CHECK(frequencies(1, 0) == 0.0);
    CHECK(frequencies(1, 1) == 0.0);
}

TEST_CASE("simulated frequencies track wigner_joint on a random instance") {
    SplitMix64 rng(311);
    const DensityMatrix rho = random_mixed_state(4, rng);
    const PVM a = random_degenerate_pvm(4, rng);
    const PVM b = random_rank1_pvm(4, rng);
    const std::int64_t trials = 200000;
    const JointProbabilityTable exact = wigner_joint(rho, a, b);
    const RealMatrix frequencies = simulate_successive(rho, a, b, trials, 99).frequencies();
    for (int m = 0; m < exact.rows(); ++m) {
        for (int n = 0; n < exact.cols(); ++n) {
            const double p = exact.probability(m, n);
            const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / double(trials));
            CHECK(std::abs(frequencies(m, n) - p) < 6.0 * sigma);
        }
    }
}

TEST_CASE("simulate_successive validates its inputs") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket0());
    CHECK_THROWS_AS(simulate_successive(rho, testutil::z_pvm(), testutil::z_pvm(), 0, 1), Error);
    SplitMix64 rng(313);
    CHECK_THROWS_AS(simulate_successive(rho, random_rank1_pvm(3, rng), testutil::z_pvm(), 10, 1),
                    DimMismatch);
}

TEST_CASE("estimate_kirkwood centers on the worked example value (1+i)/4") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket_plus_i());
    const KirkwoodEstimate estimate = estimate_kirkwood(rho, testutil::z_pvm(), 0,
                                                        testutil::x_pvm().projector(0), 100000, 5);
    CHECK(std::abs(estimate.value.real() - 0.25) < 5.0 * estimate.std_error_re);
    CHECK(std::abs(estimate.value.imag() - 0.25) < 5.0 * estimate.std_error_im);
    CHECK(estimate.std_error_re > 0.0);
    CHECK(estimate.std_error_im > 0.0);
}

TEST_CASE("estimate_kirkwood sees no disturbance for commuting projectors") {
    SplitMix64 rng(317);
    const OrthonormalBasis basis = random_basis(3, rng);
    const PVM a = pvm_from_basis(basis);
    const DensityMatrix rho = random_mixed_state(3, rng);
    const KirkwoodEstimate estimate =
        estimate_kirkwood(rho, a, 0, a.projector(1), 100000, 31);
    // Exact value is real (in fact 0 here); the imaginary estimate is a
    // difference of two arms centered on the same number.
    CHECK(std::abs(estimate.value.imag()) < 5.0 * estimate.std_error_im);
    const Complex exact = kirkwood::kirkwood(rho, a, a).entry(0, 1);
    CHECK(std::abs(exact.imag()) < 1e-12);
    CHECK(std::abs(estimate.value.real() - exact.real()) < 5.0 * estimate.std_error_re);
}

TEST_CASE("estimate is deterministic per seed") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket_plus_i());
    const KirkwoodEstimate first = estimate_kirkwood(rho, testutil::z_pvm(), 0,
                                                     testutil::x_pvm().projector(0), 70000, 11);
    const KirkwoodEstimate second = estimate_kirkwood(rho, testutil::z_pvm(), 0,
                                                      testutil::x_pvm().projector(0), 70000, 11);
    CHECK(first.value == second.value);
    CHECK(first.std_error_re == second.std_error_re);
    CHECK(first.std_error_im == second.std_error_im);
}

TEST_CASE("standard errors shrink like the square root of the budget") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket_plus_i());
    const KirkwoodEstimate small = estimate_kirkwood(rho, testutil::z_pvm(), 0,
                                                     testutil::x_pvm().projector(0), 50000, 3);
    const KirkwoodEstimate large = estimate_kirkwood(rho, testutil::z_pvm(), 0,
                                                     testutil::x_pvm().projector(0), 200000, 3);
    CHECK(small.std_error_re / large.std_error_re == doctest::Approx(2.0).epsilon(0.2));
    CHECK(small.std_error_im / large.std_error_im == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("averaging estimates over seeds approaches the exact value") {
    SplitMix64 rng(331);
    const DensityMatrix rho = random_mixed_state(2, rng);
    const PVM a = random_rank1_pvm(2, rng);
    const PVM b = random_rank1_pvm(2, rng);
    const Complex exact = kirkwood::kirkwood(rho, a, b).entry(0, 1);

    const int seeds = 100;
    const std::int64_t trials = 20000;
    Complex mean = 0.0;
    double var_re = 0.0;
    double var_im = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const KirkwoodEstimate estimate =
            estimate_kirkwood(rho, a, 0, b.projector(1), trials, 1000 + s);
        mean += estimate.value;
        var_re += estimate.std_error_re * estimate.std_error_re;
        var_im += estimate.std_error_im * estimate.std_error_im;
    }
    mean /= double(seeds);
    const double sem_re = std::sqrt(var_re) / double(seeds);
    const double sem_im = std::sqrt(var_im) / double(seeds);
    CHECK(std::abs(mean.real() - exact.real()) < 3.0 * sem_re);
    CHECK(std::abs(mean.imag() - exact.imag()) < 3.0 * sem_im);
}

TEST_CASE("estimate_kirkwood validates its inputs") {
    const DensityMatrix rho = testutil::pure_state(testutil::ket0());
    CHECK_THROWS_AS(
        estimate_kirkwood(rho, testutil::z_pvm(), 5, testutil::x_pvm().projector(0), 10, 1),
        IndexOutOfRange);
    CHECK_THROWS_AS(
        estimate_kirkwood(rho, testutil::z_pvm(), 0, testutil::x_pvm().projector(0), 0, 1),
        Error);
}

TEST_CASE("joint count tables enforce their bookkeeping") {
    CountMatrix counts = CountMatrix::Zero(2, 2);
    counts(0, 0) = 5;
    CHECK_THROWS_AS(JointCountTable(counts, 6, 0), NotUnitTrace);
    counts(0, 1) = -1;
    CHECK_THROWS_AS(JointCountTable(counts, 4, 0), NotPositive);
}
