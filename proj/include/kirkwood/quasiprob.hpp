#pragma once

#include "kirkwood/measurement.hpp"
#include "kirkwood/types.hpp"

namespace kirkwood {

// Complex quasiprobability table, entry (m, n) = Tr(rho A_m B_n). Rows index
// the first (A) observable, columns the second (B). Both marginals reproduce
// the respective Born probabilities; the imaginary parts of the marginals
// vanish. Construction records the worst marginal deviations so callers can
// report them.
class KirkwoodTable {
public:
    KirkwoodTable(ComplexMatrix entries, PVM a_pvm, PVM b_pvm, RealVector a_marginal_reference,
                  RealVector b_marginal_reference);

    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    const ComplexMatrix& entries() const { return entries_; }
    Complex entry(int m, int n) const;
    const PVM& a_pvm() const { return a_pvm_; }
    const PVM& b_pvm() const { return b_pvm_; }

    // Row sums (over n) and column sums (over m).
    ComplexVector row_sums() const { return entries_.rowwise().sum(); }
    ComplexVector col_sums() const { return entries_.colwise().sum().transpose(); }

    // Born probabilities of the source state, recorded at build time.
    const RealVector& a_marginal_reference() const { return a_marginal_reference_; }
    const RealVector& b_marginal_reference() const { return b_marginal_reference_; }

    // Worst |marginal - Born probability| against the reference state.
    double max_marginal_deviation() const { return max_marginal_deviation_; }
    // Worst |Im| over both marginals.
    double max_imaginary_marginal() const { return max_imaginary_marginal_; }

private:
    ComplexMatrix entries_;
    PVM a_pvm_;
    PVM b_pvm_;
    RealVector a_marginal_reference_;
    RealVector b_marginal_reference_;
    double max_marginal_deviation_;
    double max_imaginary_marginal_;
};

// One Kirkwood entry split into the successive-measurement probability and
// the two disturbance terms observable from it:
//   Tr(rho A_m B_n) = wigner_term + real_disturbance + i * imag_disturbance.
struct DisturbanceDecomposition {
    double wigner_term = 0.0;
    double real_disturbance = 0.0;
    double imag_disturbance = 0.0;
    Complex kirkwood_value;
};

KirkwoodTable kirkwood(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm);

// Entrywise real part of the Kirkwood table (may be negative).
RealMatrix margenau_hill(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm);

// Splits Tr(rho A_m B_n) into the Wigner term Tr(rho A_m B_n A_m) plus the
// change a nonselective A_m-measurement imposes on B_n (real part) and on the
// phase-rotated projector B_n^{pi/2} (imaginary part).
DisturbanceDecomposition decompose(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                   const Projector& b_proj, const Tolerances& tol = {});

// Kirkwood table of the nonselective post-measurement state under A_m. Row m
// turns real and equals the Wigner row: the measurement kills the complex
// modification term for its own projector.
KirkwoodTable kirkwood_after_nonselective(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                          const PVM& b_pvm, const Tolerances& tol = {});

// Kirkwood table of the selective post-measurement state under A_m: row m is
// the Wigner row conditioned on P(a_m), every other row is zero.
KirkwoodTable kirkwood_after_selective(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                       const PVM& b_pvm, const Tolerances& tol = {});

} // namespace kirkwood
