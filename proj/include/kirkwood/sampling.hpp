#pragma once

#include <cstdint>

#include "kirkwood/measurement.hpp"
#include "kirkwood/rng.hpp"
#include "kirkwood/types.hpp"

namespace kirkwood {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Outcome counts from repeating the two-step experiment.
class JointCountTable {
public:
    JointCountTable(CountMatrix counts, std::int64_t trials, std::uint64_t seed);

    int rows() const { return static_cast<int>(counts_.rows()); }
    int cols() const { return static_cast<int>(counts_.cols()); }
    const CountMatrix& counts() const { return counts_; }
    std::int64_t trials() const { return trials_; }
    std::uint64_t seed() const { return seed_; }

    RealMatrix frequencies() const;

private:
    CountMatrix counts_;
    std::int64_t trials_;
    std::uint64_t seed_;
};

// Empirical complex Kirkwood value with per-component standard errors.
struct KirkwoodEstimate {
    Complex value;
    double std_error_re = 0.0;
    double std_error_im = 0.0;
    std::int64_t trials_per_arm = 0;
    std::uint64_t seed = 0;
};

// Repeats the protocol trials times: draw the A outcome from the Born rule,
// reduce selectively, draw the B outcome on the reduced state. Outcomes are
// sampled by inverse CDF from per-outcome distributions cached up front (the
// statistics depend only on the reduced state, never on a sampled
// trajectory). Bit-identical results for identical (inputs, seed): trials run
// in fixed-size blocks whose RNG streams derive from (seed, arm, block), so
// any parallel schedule reduces to the same table.
JointCountTable simulate_successive(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm,
                                    std::int64_t trials, std::uint64_t seed,
                                    const Tolerances& tol = {});

// Estimates Tr(rho A_m B_n) from four simulated experiment arms, each with
// trials_per_arm trials:
//   arm 0  A_m then B_n        -> Wigner term and the disturbed Tr(rho' B_n)
//   arm 1  B_n on rho          -> Tr(rho B_n)
//   arm 2  B_n^{pi/2} on rho   -> Tr(rho B_n^{pi/2})
//   arm 3  A_m then B_n^{pi/2} -> Tr(rho' B_n^{pi/2})
// combined exactly as in decompose(), with binomial standard errors (the two
// arm-0 frequencies entering the real part share trials; their covariance is
// accounted for). The estimator's expectation is the exact Kirkwood value.
KirkwoodEstimate estimate_kirkwood(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                   const Projector& b_proj, std::int64_t trials_per_arm,
                                   std::uint64_t seed, const Tolerances& tol = {});

} // namespace kirkwood
