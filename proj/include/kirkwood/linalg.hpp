#pragma once

#include "kirkwood/types.hpp"

namespace kirkwood {

// Hermitizes the input to (M + M^dag)/2 and checks the density-matrix
// invariants (hermitian, unit trace, positive semidefinite).
DensityMatrix validate_density(const ComplexMatrix& matrix, const Tolerances& tol = {});

// Rank-1 PVM |v_m><v_m| in basis order, unlabeled.
PVM pvm_from_basis(const OrthonormalBasis& basis, const Tolerances& tol = {});

// Spectral resolution of a hermitian observable. Eigenvalues within
// tol.degeneracy of each other (sorted-gap clustering) share one projector;
// labels are the cluster mean eigenvalues, strictly increasing.
PVM pvm_from_observable(const ComplexMatrix& observable, const Tolerances& tol = {});

// Entry (k, m) = <a_k|b_m>. Unitary for orthonormal inputs of equal dimension.
ComplexMatrix overlap_matrix(const OrthonormalBasis& a, const OrthonormalBasis& b);

} // namespace kirkwood
