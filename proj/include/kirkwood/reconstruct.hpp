#pragma once

#include <utility>
#include <vector>

#include "kirkwood/quasiprob.hpp"
#include "kirkwood/types.hpp"

namespace kirkwood {

// Two orthonormal bases with their overlap matrix <a_k|b_m> cached.
class BasisPair {
public:
    BasisPair(OrthonormalBasis a, OrthonormalBasis b);

    int dim() const { return a_.dim(); }
    const OrthonormalBasis& a() const { return a_; }
    const OrthonormalBasis& b() const { return b_; }
    const ComplexMatrix& overlaps() const { return overlaps_; }

private:
    OrthonormalBasis a_;
    OrthonormalBasis b_;
    ComplexMatrix overlaps_;
};

struct ComplementarityReport {
    bool complementary = false;
    double min_overlap = 0.0; // smallest |<a_k|b_m>|
    std::vector<std::pair<int, int>> offending; // index pairs at or below threshold
};

struct ReconstructionDiagnostics {
    double min_overlap = 0.0;           // conditioning of the inversion
    double raw_hermiticity = 0.0;       // max |X - X^dag| of the reassembled matrix
    double physicality_residual = 0.0;  // Frobenius distance from raw to returned state
};

// Complementary bases share no vectors; equivalently every overlap is
// nonzero. Reports all index pairs with |<a_k|b_m>| <= tol_overlap.
ComplementarityReport check_complementary(const BasisPair& pair, double tol_overlap = 1e-8);

// Mutually unbiased: every overlap modulus within tol of 1/sqrt(N).
bool check_mub(const BasisPair& pair, double tol = 1e-8);

// Standard basis paired with the basis whose overlaps are the DFT kernel
// <a_m|b_n> = exp(2 pi i m n / N) / sqrt(N); mutually unbiased for every N.
BasisPair schwinger_pair(int n);

// Inverts <b_m|rho|b_n> = sum_k (<a_k|b_n>/<a_k|b_m>) T(k, m) for a Kirkwood
// table T over the rank-1 PVMs of a complementary pair, then maps back to the
// standard representation. The inversion is exact; no repair is attempted for
// inconsistent tables (they surface as NotPhysical).
DensityMatrix reconstruct_density(const KirkwoodTable& table, const BasisPair& pair,
                                  const Tolerances& tol = {},
                                  ReconstructionDiagnostics* diagnostics = nullptr);

// Same inversion specialized to schwinger_pair(n), where the ratio of
// overlaps collapses to the Fourier kernel exp(2 pi i k (n - m) / N).
DensityMatrix reconstruct_fourier(const KirkwoodTable& table, int n, const Tolerances& tol = {});

// Re-expresses a Kirkwood table over a different basis pair by inverting to
// the density matrix and evaluating the distribution in the new pair.
KirkwoodTable kirkwood_rebase(const KirkwoodTable& table, const BasisPair& from,
                              const BasisPair& to, const Tolerances& tol = {});

} // namespace kirkwood
