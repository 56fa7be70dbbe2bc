#include "kirkwood/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace kirkwood {

namespace {

constexpr std::int64_t kBlockSize = 1 << 16;

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": dimensions differ, " << a << " vs " << b;
        throw DimMismatch(msg.str());
    }
}

void require_trials(std::int64_t trials, const char* what) {
    if (trials < 1) {
        std::ostringstream msg;
        msg << what << ": need at least 1 trial, got " << trials;
        throw Error(ErrorCode::generic, msg.str());
    }
}

// Cumulative distribution for inverse-CDF sampling. Negative roundoff is
// clamped; any residual mass past the last step lands in the last outcome
// with positive probability.
struct OutcomeSampler {
    std::vector<double> cdf;
    int last_positive = 0;

    explicit OutcomeSampler(const RealVector& probabilities) {
        cdf.resize(static_cast<std::size_t>(probabilities.size()));
        double running = 0.0;
        for (int k = 0; k < probabilities.size(); ++k) {
            const double p = std::max(probabilities(k), 0.0);
            if (p > 0.0) {
                last_positive = k;
            }
            running += p;
            cdf[static_cast<std::size_t>(k)] = running;
        }
    }

    int draw(double u) const {
        for (std::size_t k = 0; k < cdf.size(); ++k) {
            if (u < cdf[k]) {
                return static_cast<int>(k);
            }
        }
        return last_positive;
    }
};

// Bernoulli probability of outcome 1 when measuring proj on state.
double projector_probability(const DensityMatrix& state, const Projector& proj) {
    return std::clamp(trace_product(state.matrix(), proj.matrix()).real(), 0.0, 1.0);
}

// The two-step protocol for a single projector pair, reduced to its cell
// probabilities: p = P(a=1), q1 = P(b=1 | a=1), q0 = P(b=1 | a=0). Branches
// with probability at or below tol.prob are never taken, so their
// conditional distribution is irrelevant.
struct TwoStepCells {
    double p = 0.0;
    double q1 = 0.0;
    double q0 = 0.0;
};

TwoStepCells two_step_cells(const DensityMatrix& rho, const Projector& a_proj,
                            const Projector& second, const Tolerances& tol) {
    TwoStepCells cells;
    cells.p = projector_probability(rho, a_proj);
    if (cells.p > tol.prob) {
        cells.q1 = projector_probability(lueders_selective(rho, a_proj, tol), second);
    }
    if (1.0 - cells.p > tol.prob) {
        const int dim = rho.dim();
        const ComplexMatrix q = ComplexMatrix::Identity(dim, dim) - a_proj.matrix();
        const ComplexMatrix branch =
            q * rho.matrix() * q / (1.0 - cells.p);
        cells.q0 = projector_probability(DensityMatrix::unchecked(branch), second);
    }
    return cells;
}

// Runs `trials` two-draw trials for one arm; visit(u1, u2) consumes the two
// uniforms of each trial. Streams derive from (seed, arm, block).
template <typename Visit>
void run_blocks(std::uint64_t seed, std::uint64_t arm, std::int64_t trials, Visit&& visit) {
    const std::uint64_t arm_key = derive_stream(seed, arm);
    std::int64_t done = 0;
    for (std::uint64_t block = 0; done < trials; ++block) {
        SplitMix64 rng(derive_stream(arm_key, block));
        const std::int64_t in_block = std::min<std::int64_t>(kBlockSize, trials - done);
        for (std::int64_t t = 0; t < in_block; ++t) {
            const double u1 = rng.uniform01();
            const double u2 = rng.uniform01();
            visit(u1, u2);
        }
        done += in_block;
    }
}

} // namespace

JointCountTable::JointCountTable(CountMatrix counts, std::int64_t trials, std::uint64_t seed)
    : counts_(std::move(counts)), trials_(trials), seed_(seed) {
    require_trials(trials_, "JointCountTable");
    if (counts_.minCoeff() < 0) {
        throw NotPositive("outcome counts must be nonnegative");
    }
    if (counts_.sum() != trials_) {
        std::ostringstream msg;
        msg << "counts sum to " << counts_.sum() << " but trials = " << trials_;
        throw NotUnitTrace(msg.str());
    }
}

RealMatrix JointCountTable::frequencies() const {
    return counts_.cast<double>() / static_cast<double>(trials_);
}

JointCountTable simulate_successive(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm,
                                    std::int64_t trials, std::uint64_t seed,
                                    const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "simulate_successive");
    require_same_dim(rho.dim(), b_pvm.dim(), "simulate_successive");
    require_trials(trials, "simulate_successive");

    const RealVector a_probs = born_probabilities(rho, a_pvm);
    const OutcomeSampler a_sampler(a_probs);
    std::vector<OutcomeSampler> b_samplers;
    b_samplers.reserve(static_cast<std::size_t>(a_pvm.size()));
    for (int m = 0; m < a_pvm.size(); ++m) {
        if (a_probs(m) > tol.prob) {
            const DensityMatrix collapsed = lueders_selective(rho, a_pvm.projector(m), tol);
            b_samplers.emplace_back(born_probabilities(collapsed, b_pvm));
        } else {
            // Unreachable branch; keep indices aligned.
            b_samplers.emplace_back(RealVector::Ones(b_pvm.size()) /
                                    static_cast<double>(b_pvm.size()));
        }
    }

    CountMatrix counts = CountMatrix::Zero(a_pvm.size(), b_pvm.size());
    run_blocks(seed, 0, trials, [&](double u1, double u2) {
        const int m = a_sampler.draw(u1);
        const int n = b_samplers[static_cast<std::size_t>(m)].draw(u2);
        counts(m, n) += 1;
    });
    return JointCountTable(std::move(counts), trials, seed);
}

KirkwoodEstimate estimate_kirkwood(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                   const Projector& b_proj, std::int64_t trials_per_arm,
                                   std::uint64_t seed, const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "estimate_kirkwood");
    require_same_dim(rho.dim(), b_proj.dim(), "estimate_kirkwood");
    require_trials(trials_per_arm, "estimate_kirkwood");
    const Projector& a_proj = a_pvm.projector(index);
    const Projector rotated_b = rotate_projector(
        phase_rotation(rho.dim(), a_pvm, index, std::numbers::pi / 2.0), b_proj);

    const double n = static_cast<double>(trials_per_arm);

    // Arm 0: A_m then B_n. Joint cells give the Wigner term (a=1, b=1) and
    // the disturbed probability Tr(rho' B_n) (marginal b=1).
    const TwoStepCells arm0 = two_step_cells(rho, a_proj, b_proj, tol);
    std::int64_t n11 = 0;
    std::int64_t n01 = 0;
    run_blocks(seed, 0, trials_per_arm, [&](double u1, double u2) {
        const bool a_hit = u1 < arm0.p;
        const bool b_hit = u2 < (a_hit ? arm0.q1 : arm0.q0);
        if (b_hit) {
            (a_hit ? n11 : n01) += 1;
        }
    });
    const double wigner_hat = static_cast<double>(n11) / n;
    const double disturbed_b_hat = static_cast<double>(n11 + n01) / n;

    // Arm 1: B_n on rho.
    const double direct_b = projector_probability(rho, b_proj);
    std::int64_t hits1 = 0;
    run_blocks(seed, 1, trials_per_arm, [&](double u1, double) { hits1 += u1 < direct_b; });
    const double direct_b_hat = static_cast<double>(hits1) / n;

    // Arm 2: B_n^{pi/2} on rho.
    const double direct_rot = projector_probability(rho, rotated_b);
    std::int64_t hits2 = 0;
    run_blocks(seed, 2, trials_per_arm, [&](double u1, double) { hits2 += u1 < direct_rot; });
    const double direct_rot_hat = static_cast<double>(hits2) / n;

    // Arm 3: A_m then B_n^{pi/2}; only the marginal enters.
    const TwoStepCells arm3 = two_step_cells(rho, a_proj, rotated_b, tol);
    std::int64_t hits3 = 0;
    run_blocks(seed, 3, trials_per_arm, [&](double u1, double u2) {
        const bool a_hit = u1 < arm3.p;
        hits3 += u2 < (a_hit ? arm3.q1 : arm3.q0);
    });
    const double disturbed_rot_hat = static_cast<double>(hits3) / n;

    // Same combination as decompose(), frequencies in place of traces.
    const double re = wigner_hat + 0.5 * (direct_b_hat - disturbed_b_hat);
    const double im = 0.5 * (direct_rot_hat - disturbed_rot_hat);

    // Arm 0 contributes W_hat - b_hat/2 per trial, whose variance absorbs
    // the covariance of the two shared-trial frequencies.
    const double arm0_mean = (static_cast<double>(n11) - static_cast<double>(n01)) / (2.0 * n);
    const double arm0_var =
        std::max(0.0, static_cast<double>(n11 + n01) / (4.0 * n) - arm0_mean * arm0_mean);
    const auto bernoulli_var = [](double p_hat) { return std::max(0.0, p_hat * (1.0 - p_hat)); };

    KirkwoodEstimate estimate;
    estimate.value = Complex(re, im);
    estimate.std_error_re = std::sqrt((arm0_var + 0.25 * bernoulli_var(direct_b_hat)) / n);
    estimate.std_error_im =
        0.5 * std::sqrt((bernoulli_var(direct_rot_hat) + bernoulli_var(disturbed_rot_hat)) / n);
    estimate.trials_per_arm = trials_per_arm;
    estimate.seed = seed;
    return estimate;
}

} // namespace kirkwood
