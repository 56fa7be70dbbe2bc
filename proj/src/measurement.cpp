#include "kirkwood/measurement.hpp"

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

} // namespace

JointProbabilityTable::JointProbabilityTable(RealMatrix entries, PVM a_pvm, PVM b_pvm,
                                             const Tolerances& tol)
    : entries_(std::move(entries)), a_pvm_(std::move(a_pvm)), b_pvm_(std::move(b_pvm)) {
    if (entries_.rows() != a_pvm_.size() || entries_.cols() != b_pvm_.size()) {
        throw DimMismatch("joint table shape does not match the PVM outcome counts");
    }
    const double min_entry = entries_.minCoeff();
    if (min_entry < -tol.psd) {
        std::ostringstream msg;
        msg << "joint probability entry " << min_entry << " below -" << tol.psd;
        throw NotPositive(msg.str());
    }
    const double sum_dev = std::abs(entries_.sum() - 1.0);
    if (sum_dev > tol.norm) {
        std::ostringstream msg;
        msg << "joint probabilities sum deviates from 1 by " << sum_dev;
        throw NotUnitTrace(msg.str());
    }
}

double JointProbabilityTable::probability(int m, int n) const {
    if (m < 0 || m >= rows() || n < 0 || n >= cols()) {
        throw IndexOutOfRange("joint table index out of range");
    }
    return std::max(entries_(m, n), 0.0);
}

RealVector born_probabilities(const DensityMatrix& rho, const PVM& pvm) {
    require_same_dim(rho.dim(), pvm.dim(), "born_probabilities");
    RealVector probabilities(pvm.size());
    for (int m = 0; m < pvm.size(); ++m) {
        probabilities(m) = trace_product(rho.matrix(), pvm.projector(m).matrix()).real();
    }
    return probabilities;
}

DensityMatrix lueders_nonselective(const DensityMatrix& rho, const Projector& proj,
                                   const Tolerances& tol) {
    require_same_dim(rho.dim(), proj.dim(), "lueders_nonselective");
    const ComplexMatrix& p = proj.matrix();
    const ComplexMatrix q = ComplexMatrix::Identity(proj.dim(), proj.dim()) - p;
    const ComplexMatrix reduced = p * rho.matrix() * p + q * rho.matrix() * q;
    return DensityMatrix::validated(reduced, tol);
}

DensityMatrix lueders_nonselective_all(const DensityMatrix& rho, const PVM& pvm,
                                       const Tolerances& tol) {
    require_same_dim(rho.dim(), pvm.dim(), "lueders_nonselective_all");
    DensityMatrix state = rho;
    for (int m = 0; m < pvm.size(); ++m) {
        state = lueders_nonselective(state, pvm.projector(m), tol);
    }
    return state;
}

DensityMatrix lueders_selective(const DensityMatrix& rho, const Projector& proj,
                                const Tolerances& tol) {
    require_same_dim(rho.dim(), proj.dim(), "lueders_selective");
    const double probability = trace_product(rho.matrix(), proj.matrix()).real();
    if (probability <= tol.prob) {
        std::ostringstream msg;
        msg << "outcome probability " << probability << " at or below " << tol.prob;
        throw ZeroProbabilityBranch(msg.str());
    }
    const ComplexMatrix reduced = proj.matrix() * rho.matrix() * proj.matrix() / probability;
    return DensityMatrix::validated(reduced, tol);
}

double conditional_probability(const DensityMatrix& rho, const Projector& a_proj,
                               const Projector& b_proj, const Tolerances& tol) {
    require_same_dim(rho.dim(), a_proj.dim(), "conditional_probability");
    require_same_dim(rho.dim(), b_proj.dim(), "conditional_probability");
    const double p_a = trace_product(rho.matrix(), a_proj.matrix()).real();
    if (p_a <= tol.prob) {
        std::ostringstream msg;
        msg << "conditioning probability " << p_a << " at or below " << tol.prob;
        throw ZeroProbabilityBranch(msg.str());
    }
    const ComplexMatrix sandwiched = a_proj.matrix() * b_proj.matrix() * a_proj.matrix();
    return trace_product(rho.matrix(), sandwiched).real() / p_a;
}

JointProbabilityTable wigner_joint(const DensityMatrix& rho, const PVM& a_pvm, const PVM& b_pvm,
                                   const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "wigner_joint");
    require_same_dim(rho.dim(), b_pvm.dim(), "wigner_joint");
    RealMatrix entries(a_pvm.size(), b_pvm.size());
    for (int m = 0; m < a_pvm.size(); ++m) {
        const ComplexMatrix& a = a_pvm.projector(m).matrix();
        const ComplexMatrix sandwiched = a * rho.matrix() * a;
        for (int n = 0; n < b_pvm.size(); ++n) {
            entries(m, n) = trace_product(sandwiched, b_pvm.projector(n).matrix()).real();
        }
    }
    return JointProbabilityTable(std::move(entries), a_pvm, b_pvm, tol);
}

PhaseRotation phase_rotation(int dim, const PVM& a_pvm, int index, double angle) {
    require_same_dim(dim, a_pvm.dim(), "phase_rotation");
    const ComplexMatrix& target = a_pvm.projector(index).matrix();
    const Complex factor = std::exp(Complex(0.0, angle)) - Complex(1.0, 0.0);
    ComplexMatrix matrix = ComplexMatrix::Identity(dim, dim) + factor * target;
    return PhaseRotation(dim, index, angle, std::move(matrix));
}

Projector rotate_projector(const PhaseRotation& rotation, const Projector& proj) {
    require_same_dim(rotation.dim(), proj.dim(), "rotate_projector");
    const ComplexMatrix& r = rotation.matrix();
    ComplexMatrix rotated = r.adjoint() * proj.matrix() * r;
    rotated = 0.5 * (rotated + rotated.adjoint().eval());
    return Projector::unchecked(std::move(rotated), proj.rank());
}

double randomization_identity_check(const DensityMatrix& rho, const PVM& a_pvm, int index,
                                    const Tolerances& tol) {
    require_same_dim(rho.dim(), a_pvm.dim(), "randomization_identity_check");
    const DensityMatrix reduced = lueders_nonselective(rho, a_pvm.projector(index), tol);
    const PhaseRotation rotation = phase_rotation(rho.dim(), a_pvm, index, std::numbers::pi);
    const ComplexMatrix& r = rotation.matrix();
    const ComplexMatrix randomized = 0.5 * (rho.matrix() + r * rho.matrix() * r.adjoint());
    return max_abs(reduced.matrix() - randomized);
}

} // namespace kirkwood
