#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "kirkwood/errors.hpp"
#include "kirkwood/tolerances.hpp"

namespace kirkwood {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Largest entrywise modulus; 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);

// max |M - M^dag| entrywise.
double hermiticity_residual(const ComplexMatrix& m);

// Tr(x y) without forming the product.
Complex trace_product(const ComplexMatrix& x, const ComplexMatrix& y);

// Unit vector in an N-dimensional Hilbert space.
class StateVector {
public:
    explicit StateVector(ComplexVector amplitudes, const Tolerances& tol = {});

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const ComplexVector& amplitudes() const { return amplitudes_; }

private:
    ComplexVector amplitudes_;
};

// Hermitian, unit-trace, positive-semidefinite matrix. Construct through
// validate_density() (which hermitizes) or the factories below; immutable after that.
class DensityMatrix {
public:
    static DensityMatrix validated(const ComplexMatrix& m, const Tolerances& tol = {});

    // Skips all invariant checks. Only for diagnostics and fault-injection
    // harnesses; everything downstream assumes the invariants hold.
    static DensityMatrix unchecked(ComplexMatrix m);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {}

    ComplexMatrix matrix_;
};

// Hermitian idempotent matrix of rank >= 1.
class Projector {
public:
    static Projector validated(const ComplexMatrix& m, const Tolerances& tol = {});
    static Projector unchecked(ComplexMatrix m, int rank);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    int rank() const { return rank_; }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    Projector(ComplexMatrix m, int rank) : matrix_(std::move(m)), rank_(rank) {}

    ComplexMatrix matrix_;
    int rank_;
};

// Projection-valued measure: mutually orthogonal projectors summing to the
// identity, optionally labeled by eigenvalues.
class PVM {
public:
    static PVM validated(std::vector<Projector> projectors,
                         std::optional<std::vector<double>> labels = std::nullopt,
                         const Tolerances& tol = {});

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(projectors_.size()); }
    const Projector& projector(int i) const;
    const std::vector<Projector>& projectors() const { return projectors_; }
    const std::optional<std::vector<double>>& labels() const { return labels_; }

private:
    PVM(std::vector<Projector> projectors, std::optional<std::vector<double>> labels, int dim)
        : projectors_(std::move(projectors)), labels_(std::move(labels)), dim_(dim) {}

    std::vector<Projector> projectors_;
    std::optional<std::vector<double>> labels_;
    int dim_;
};

// N orthonormal vectors, stored as the columns of a unitary matrix.
class OrthonormalBasis {
public:
    static OrthonormalBasis validated(const ComplexMatrix& columns, const Tolerances& tol = {});

    int dim() const { return static_cast<int>(columns_.rows()); }
    const ComplexMatrix& columns() const { return columns_; }
    ComplexVector vector(int i) const;

private:
    explicit OrthonormalBasis(ComplexMatrix columns) : columns_(std::move(columns)) {}

    ComplexMatrix columns_;
};

} // namespace kirkwood
