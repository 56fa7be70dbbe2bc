#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kirkwood/rng.hpp"
#include "kirkwood/types.hpp"

namespace kirkwood {

// One invariant family checked over randomized instances.
struct FamilyResult {
    std::string name;
    bool pass = false;
    bool inconclusive = false; // only the witness search may end here
    double worst_residual = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerifyOptions {
    int min_dim = 2;
    int max_dim = 8;
    int instances = 50; // per family, cycling through the dimension range
    std::uint64_t seed = 1;
    bool inject_fault = false; // skip hermitization of generated states
    Tolerances tol{};
};

// Instance ingredients, shared with tests and the acceptance suite.
PVM random_rank1_pvm(int dim, SplitMix64& rng, const Tolerances& tol = {});
// Random basis grouped into blocks; for dim >= 4 the first block has rank 2
// or 3, so degenerate spectra are always exercised.
PVM random_degenerate_pvm(int dim, SplitMix64& rng, const Tolerances& tol = {});
// Mixed state (even counter) or pure state (odd); with inject_fault a
// non-hermitized matrix is smuggled past validation.
DensityMatrix generate_state(int dim, SplitMix64& rng, std::uint64_t counter, bool inject_fault,
                             const Tolerances& tol = {});

// Kirkwood marginals match the Born probabilities and are real.
FamilyResult verify_marginals(const VerifyOptions& options);
// Entrywise reassembly Tr(rho A_m B_n) = wigner + re_dist + i im_dist.
FamilyResult verify_decomposition(const VerifyOptions& options);
// Nonselective reduction equals the phase-randomization average.
FamilyResult verify_randomization(const VerifyOptions& options);
// Post-measurement Kirkwood rows: nonselective kills the modification term,
// selective conditionalizes on P(a_m).
FamilyResult verify_post_measurement(const VerifyOptions& options);
// Commuting PVMs yield a real, nonnegative table.
FamilyResult verify_commuting(const VerifyOptions& options);
// Round-trip state -> Kirkwood -> state over Schwinger and random
// complementary pairs, plus rejection of a pair sharing a vector.
FamilyResult verify_reconstruction(const VerifyOptions& options);
// reconstruct_fourier agrees with reconstruct_density on Schwinger pairs.
FamilyResult verify_fourier(const VerifyOptions& options);
// Searches dims 2 and 3 for two states with identical Margenau-Hill tables
// but different imaginary parts (the real part alone cannot pin the state).
// Reports inconclusive instead of failed when no pair turns up.
FamilyResult verify_mh_witness(const VerifyOptions& options);

// All families, in report order.
std::vector<FamilyResult> run_verification(const VerifyOptions& options);

} // namespace kirkwood
