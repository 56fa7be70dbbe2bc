#include "kirkwood/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <utility>

namespace kirkwood {

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint().eval());
}

Complex trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
    // Tr(x y) = sum_ij x_ij y_ji
    return x.cwiseProduct(y.transpose()).sum();
}

StateVector::StateVector(ComplexVector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
        throw InvalidDimension("state vector must have positive dimension");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > tol.norm) {
        std::ostringstream msg;
        msg << "state vector norm deviates from 1 by " << std::abs(norm - 1.0);
        throw NotNormalized(msg.str());
    }
}

DensityMatrix DensityMatrix::validated(const ComplexMatrix& m, const Tolerances& tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << "density matrix must be square and nonempty, got " << m.rows() << "x" << m.cols();
        throw DimMismatch(msg.str());
    }
    const double herm = hermiticity_residual(m);
    if (herm > tol.herm) {
        std::ostringstream msg;
        msg << "not hermitian: max |M - M^dag| = " << herm;
        throw NotHermitian(msg.str());
    }
    ComplexMatrix hermitized = 0.5 * (m + m.adjoint().eval());
    const double trace_dev = std::abs(hermitized.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol.norm) {
        std::ostringstream msg;
        msg << "trace deviates from 1 by " << trace_dev;
        throw NotUnitTrace(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitized, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol.psd) {
        std::ostringstream msg;
        msg << "not positive semidefinite: smallest eigenvalue = " << min_eig;
        throw NotPositive(msg.str());
    }
    return DensityMatrix(std::move(hermitized));
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

Projector Projector::validated(const ComplexMatrix& m, const Tolerances& tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        std::ostringstream msg;
        msg << "projector must be square and nonempty, got " << m.rows() << "x" << m.cols();
        throw DimMismatch(msg.str());
    }
    const double herm = hermiticity_residual(m);
    if (herm > tol.herm) {
        std::ostringstream msg;
        msg << "projector not hermitian: max |P - P^dag| = " << herm;
        throw NotHermitian(msg.str());
    }
    const double idem = max_abs(m * m - m);
    if (idem > tol.herm) {
        std::ostringstream msg;
        msg << "not idempotent: max |P^2 - P| = " << idem;
        throw NotProjector(msg.str());
    }
    const double trace = m.trace().real();
    const int rank = static_cast<int>(std::lround(trace));
    if (rank < 1 || std::abs(trace - rank) > tol.norm) {
        std::ostringstream msg;
        msg << "projector trace " << trace << " is not a positive integer rank";
        throw NotProjector(msg.str());
    }
    return Projector(m, rank);
}

Projector Projector::unchecked(ComplexMatrix m, int rank) { return Projector(std::move(m), rank); }

PVM PVM::validated(std::vector<Projector> projectors, std::optional<std::vector<double>> labels,
                   const Tolerances& tol) {
    if (projectors.empty()) {
        throw NotPVM("a PVM needs at least one projector");
    }
    const int dim = projectors.front().dim();
    if (static_cast<int>(projectors.size()) > dim) {
        std::ostringstream msg;
        msg << projectors.size() << " projectors exceed dimension " << dim;
        throw NotPVM(msg.str());
    }
    if (labels && labels->size() != projectors.size()) {
        throw NotPVM("label count does not match projector count");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        if (projectors[i].dim() != dim) {
            throw DimMismatch("projectors in a PVM must share one dimension");
        }
        sum += projectors[i].matrix();
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            const double cross = max_abs(projectors[i].matrix() * projectors[j].matrix());
            if (cross > tol.herm) {
                std::ostringstream msg;
                msg << "projectors " << i << " and " << j << " are not orthogonal: max |P_i P_j| = "
                    << cross;
                throw NotPVM(msg.str());
            }
        }
    }
    const double completeness = max_abs(sum - ComplexMatrix::Identity(dim, dim));
    if (completeness > tol.herm) {
        std::ostringstream msg;
        msg << "projectors do not sum to the identity: residual " << completeness;
        throw NotPVM(msg.str());
    }
    return PVM(std::move(projectors), std::move(labels), dim);
}

const Projector& PVM::projector(int i) const {
    if (i < 0 || i >= size()) {
        std::ostringstream msg;
        msg << "projector index " << i << " out of range [0, " << size() << ")";
        throw IndexOutOfRange(msg.str());
    }
    return projectors_[static_cast<std::size_t>(i)];
}

OrthonormalBasis OrthonormalBasis::validated(const ComplexMatrix& columns, const Tolerances& tol) {
    if (columns.rows() != columns.cols() || columns.rows() == 0) {
        std::ostringstream msg;
        msg << "a basis needs exactly dim vectors of length dim, got " << columns.rows() << "x"
            << columns.cols();
        throw DimMismatch(msg.str());
    }
    const int dim = static_cast<int>(columns.rows());
    const double residual =
        max_abs(columns.adjoint() * columns - ComplexMatrix::Identity(dim, dim));
    if (residual > tol.herm) {
        std::ostringstream msg;
        msg << "vectors are not orthonormal: max |<v_i|v_j> - delta_ij| = " << residual;
        throw NotOrthonormal(msg.str());
    }
    return OrthonormalBasis(columns);
}

ComplexVector OrthonormalBasis::vector(int i) const {
    if (i < 0 || i >= dim()) {
        std::ostringstream msg;
        msg << "basis vector index " << i << " out of range [0, " << dim() << ")";
        throw IndexOutOfRange(msg.str());
    }
    return columns_.col(i);
}

} // namespace kirkwood
