#include "kirkwood/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>
#include <vector>

namespace kirkwood {

DensityMatrix validate_density(const ComplexMatrix& matrix, const Tolerances& tol) {
    return DensityMatrix::validated(matrix, tol);
}

PVM pvm_from_basis(const OrthonormalBasis& basis, const Tolerances& tol) {
    std::vector<Projector> projectors;
    projectors.reserve(static_cast<std::size_t>(basis.dim()));
    for (int m = 0; m < basis.dim(); ++m) {
        const ComplexVector v = basis.vector(m);
        projectors.push_back(Projector::unchecked(v * v.adjoint(), 1));
    }
    return PVM::validated(std::move(projectors), std::nullopt, tol);
}

PVM pvm_from_observable(const ComplexMatrix& observable, const Tolerances& tol) {
    if (observable.rows() != observable.cols() || observable.rows() == 0) {
        std::ostringstream msg;
        msg << "observable must be square and nonempty, got " << observable.rows() << "x"
            << observable.cols();
        throw DimMismatch(msg.str());
    }
    const double herm = hermiticity_residual(observable);
    if (herm > tol.herm) {
        std::ostringstream msg;
        msg << "observable not hermitian: max |M - M^dag| = " << herm;
        throw NotHermitian(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(observable);
    const RealVector& eigenvalues = solver.eigenvalues(); // ascending
    const ComplexMatrix& vectors = solver.eigenvectors();
    const int dim = static_cast<int>(observable.rows());

    std::vector<Projector> projectors;
    std::vector<double> labels;
    int cluster_start = 0;
    for (int i = 1; i <= dim; ++i) {
        if (i < dim && eigenvalues(i) - eigenvalues(i - 1) <= tol.degeneracy) {
            continue;
        }
        const int count = i - cluster_start;
        const auto block = vectors.middleCols(cluster_start, count);
        projectors.push_back(Projector::unchecked(block * block.adjoint(), count));
        labels.push_back(eigenvalues.segment(cluster_start, count).mean());
        cluster_start = i;
    }
    return PVM::validated(std::move(projectors), std::move(labels), tol);
}

ComplexMatrix overlap_matrix(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << "basis dimensions differ: " << a.dim() << " vs " << b.dim();
        throw DimMismatch(msg.str());
    }
    return a.columns().adjoint() * b.columns();
}

} // namespace kirkwood
