#pragma once

#include "kirkwood/types.hpp"

namespace kirkwood {

// Probabilities for the two-step experiment: measure the A-observable first
// (rows), then the B-observable (columns).
class JointProbabilityTable {
public:
    JointProbabilityTable(RealMatrix entries, PVM a_pvm, PVM b_pvm, const Tolerances& tol = {});

    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    const RealMatrix& entries() const { return entries_; }
    // Entry clamped to 0 from below (roundoff hygiene).
    double probability(int m, int n) const;
    const PVM& a_pvm() const { return a_pvm_; }
    const PVM& b_pvm() const { return b_pvm_; }

private:
    RealMatrix entries_;
    PVM a_pvm_;
    PVM b_pvm_;
};

// Unitary 1 + (e^{i phi} - 1) A_m: multiplies the target projector's range by
// a phase and leaves the rest of the PVM alone.
class PhaseRotation {
public:
    PhaseRotation(int dim, int target_index, double angle, ComplexMatrix matrix)
        : matrix_(std::move(matrix)), dim_(dim), target_index_(target_index), angle_(angle) {}

    int dim() const { return dim_; }
    int target_index() const { return target_index_; }
    double angle() const { return angle_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
    int dim_;
    int target_index_;
    double angle_;
};

// P(a_m) = Tr(rho A_m) for every projector of the PVM.
RealVector born_probabilities(const DensityMatrix& rho, const PVM& pvm);

// Two-outcome nonselective reduction: A rho A + (1-A) rho (1-A).
DensityMatrix lueders_nonselective(const DensityMatrix& rho, const Projector& proj,
                                   const Tolerances& tol = {});

// Full-observable nonselective reduction sum_m A_m rho A_m, obtained by
// applying the two-outcome rule once per projector.
DensityMatrix lueders_nonselective_all(const DensityMatrix& rho, const PVM& pvm,
                                       const Tolerances& tol = {});

// Selective reduction A rho A / Tr(rho A); throws ZeroProbabilityBranch when
// the outcome probability is at or below tol.prob.
DensityMatrix lueders_selective(const DensityMatrix& rho, const Projector& proj,
                                const Tolerances& tol = {});

// P(b|a) = Tr(rho A B A) / Tr(rho A): the B-outcome probability on the
// selectively reduced state.
double conditional_probability(const DensityMatrix& rho, const Projector& a_proj,
                               const Projector& b_proj, const Tolerances& tol = {});

// Joint probability table for successive measurements,
// entry (m, n) = Tr(rho A_m B_n A_m).
JointProbabilityTable wigner_joint(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm,
                                   const Tolerances& tol = {});

PhaseRotation phase_rotation(int dim, const PVM& a_pvm, int index, double angle);

// The projector effectively measured when the rotation is applied to the
// state before measuring proj: R^dag proj R. Rank is preserved.
Projector rotate_projector(const PhaseRotation& rotation, const Projector& proj);

// max |lueders_nonselective(rho, A_m) - (rho + R rho R^dag)/2| at angle pi;
// the phase-randomization form of the nonselective reduction makes this
// vanish for every valid input.
double randomization_identity_check(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                    const Tolerances& tol = {});

} // namespace kirkwood
