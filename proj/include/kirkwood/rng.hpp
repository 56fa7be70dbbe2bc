#pragma once

#include <cstdint>

#include "kirkwood/types.hpp"

namespace kirkwood {

// SplitMix64: a 64-bit counter-style generator. Streams are derived from a
// master seed by hashing, so results do not depend on evaluation order or
// thread scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    // Uniform in [0, 1) with 53 random bits.
    double uniform01();

    // Standard normal via Box-Muller (two draws per pair, cached).
    double gaussian();

private:
    std::uint64_t state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

// Independent substream keyed by (seed, index); chain for (seed, arm, block).
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

// Gaussian complex matrix with independent N(0,1) real and imaginary parts.
ComplexMatrix random_gaussian_matrix(int rows, int cols, SplitMix64& rng);

// Haar-distributed unitary: QR of a Gaussian matrix with the R-diagonal
// phases absorbed into Q.
ComplexMatrix random_unitary(int dim, SplitMix64& rng);

// Normalized Gaussian vector as a rank-1 density matrix.
DensityMatrix random_pure_state(int dim, SplitMix64& rng, const Tolerances& tol = {});

// G G^dag / Tr(G G^dag) for a Gaussian G (full rank almost surely).
DensityMatrix random_mixed_state(int dim, SplitMix64& rng, const Tolerances& tol = {});

// Basis from the columns of a Haar unitary.
OrthonormalBasis random_basis(int dim, SplitMix64& rng, const Tolerances& tol = {});

} // namespace kirkwood
