#include "kirkwood/quasiprob.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace kirkwood {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        std::ostringstream msg;
        msg << what << ": dimensions differ, " << a << " vs " << b;
        throw DimMismatch(msg.str());
    }
}

KirkwoodTable kirkwood_table_of(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm) {
    ComplexMatrix entries(a_pvm.size(), b_pvm.size());
    for (int m = 0; m < a_pvm.size(); ++m) {
        const ComplexMatrix left = rho.matrix() * a_pvm.projector(m).matrix();
        for (int n = 0; n < b_pvm.size(); ++n) {
            entries(m, n) = trace_product(left, b_pvm.projector(n).matrix());
        }
    }
    return KirkwoodTable(std::move(entries), a_pvm, b_pvm, born_probabilities(rho, a_pvm),
                         born_probabilities(rho, b_pvm));
}

} // namespace

KirkwoodTable::KirkwoodTable(ComplexMatrix entries, PVM a_pvm, PVM b_pvm,
                             RealVector a_marginal_reference, RealVector b_marginal_reference)
    : entries_(std::move(entries)), a_pvm_(std::move(a_pvm)), b_pvm_(std::move(b_pvm)),
      a_marginal_reference_(std::move(a_marginal_reference)),
      b_marginal_reference_(std::move(b_marginal_reference)) {
    if (entries_.rows() != a_pvm_.size() || entries_.cols() != b_pvm_.size()) {
        throw DimMismatch("Kirkwood table shape does not match the PVM outcome counts");
    }
    if (a_marginal_reference_.size() != entries_.rows() ||
        b_marginal_reference_.size() != entries_.cols()) {
        throw DimMismatch("marginal reference lengths do not match the table shape");
    }
    const ComplexVector rows = row_sums();
    const ComplexVector cols = col_sums();
    max_marginal_deviation_ = std::max((rows.real() - a_marginal_reference_).cwiseAbs().maxCoeff(),
                                       (cols.real() - b_marginal_reference_).cwiseAbs().maxCoeff());
    max_imaginary_marginal_ =
        std::max(rows.imag().cwiseAbs().maxCoeff(), cols.imag().cwiseAbs().maxCoeff());
}

Complex KirkwoodTable::entry(int m, int n) const {
    if (m < 0 || m >= rows() || n < 0 || n >= cols()) {
        throw IndexOutOfRange("Kirkwood table index out of range");
    }
    return entries_(m, n);
}

KirkwoodTable kirkwood(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm) {
    require_same_dim(rho.dim(), a_pvm.dim(), "kirkwood");
    require_same_dim(rho.dim(), b_pvm.dim(), "kirkwood");
    return kirkwood_table_of(rho, a_pvm, b_pvm);
}

RealMatrix margenau_hill(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm) {
    return kirkwood(rho, a_pvm, b_pvm).entries().real();
}

DisturbanceDecomposition decompose(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                   const Projector& b_proj, const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "decompose");
    require_same_dim(rho.dim(), b_proj.dim(), "decompose");
    const Projector& a_proj = a_pvm.projector(index);

    const DensityMatrix reduced = lueders_nonselective(rho, a_proj, tol);
    const ComplexMatrix difference = rho.matrix() - reduced.matrix();
    const Projector rotated_b =
        rotate_projector(phase_rotation(rho.dim(), a_pvm, index, std::numbers::pi / 2.0), b_proj);

    DisturbanceDecomposition parts;
    const ComplexMatrix sandwiched = a_proj.matrix() * b_proj.matrix() * a_proj.matrix();
    parts.wigner_term = trace_product(rho.matrix(), sandwiched).real();
    parts.real_disturbance = 0.5 * trace_product(difference, b_proj.matrix()).real();
    parts.imag_disturbance = 0.5 * trace_product(difference, rotated_b.matrix()).real();
    parts.kirkwood_value =
        trace_product(rho.matrix(), (a_proj.matrix() * b_proj.matrix()).eval());
    return parts;
}

KirkwoodTable kirkwood_after_nonselective(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                          const PVM& b_pvm, const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "kirkwood_after_nonselective");
    require_same_dim(rho.dim(), b_pvm.dim(), "kirkwood_after_nonselective");
    const DensityMatrix reduced = lueders_nonselective(rho, a_pvm.projector(index), tol);
    return kirkwood_table_of(reduced, a_pvm, b_pvm);
}

KirkwoodTable kirkwood_after_selective(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                       const PVM& b_pvm, const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "kirkwood_after_selective");
    require_same_dim(rho.dim(), b_pvm.dim(), "kirkwood_after_selective");
    const DensityMatrix reduced = lueders_selective(rho, a_pvm.projector(index), tol);
    return kirkwood_table_of(reduced, a_pvm, b_pvm);
}

} // namespace kirkwood
