#pragma once

namespace kirkwood {

// Numerical tolerances used throughout. Defaults are sized for
// double-precision arithmetic at dimensions up to a few hundred.
struct Tolerances {
    double herm = 1e-10;        // hermiticity / operator identities (max entrywise)
    double norm = 1e-10;        // trace and probability normalization
    double psd = 1e-10;         // allowed negativity of eigenvalues / probabilities
    double degeneracy = 1e-8;   // eigenvalue cluster gap
    double prob = 1e-12;        // zero-probability branch threshold
    double overlap = 1e-8;      // complementarity threshold on |<a_k|b_m>|
    double recon = 1e-8;        // reconstruction round-trip budget (Frobenius)
};

} // namespace kirkwood
