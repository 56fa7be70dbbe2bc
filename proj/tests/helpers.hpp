#pragma once

#include <cmath>
#include <complex>

#include "kirkwood/linalg.hpp"
#include "kirkwood/rng.hpp"
#include "kirkwood/types.hpp"
#include "oracle.hpp"

namespace testutil {

using kirkwood::Complex;
using kirkwood::ComplexMatrix;
using kirkwood::ComplexVector;

inline ComplexMatrix from_oracle(const oracle::Mat& m) {
    ComplexMatrix out(static_cast<Eigen::Index>(m.size()),
                      static_cast<Eigen::Index>(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m[0].size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
        }
    }
    return out;
}

inline oracle::Mat to_oracle(const ComplexMatrix& m) {
    oracle::Mat out = oracle::zeros(static_cast<std::size_t>(m.rows()),
                                    static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
        }
    }
    return out;
}

inline ComplexVector ket(std::initializer_list<Complex> amplitudes) {
    ComplexVector v(static_cast<Eigen::Index>(amplitudes.size()));
    Eigen::Index i = 0;
    for (const Complex& a : amplitudes) {
        v(i++) = a;
    }
    return v;
}

inline const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

inline ComplexVector ket0() { return ket({1.0, 0.0}); }
inline ComplexVector ket1() { return ket({0.0, 1.0}); }
inline ComplexVector ket_plus() { return ket({inv_sqrt2, inv_sqrt2}); }
inline ComplexVector ket_minus() { return ket({inv_sqrt2, -inv_sqrt2}); }
// (|0> + i|1>)/sqrt(2)
inline ComplexVector ket_plus_i() { return ket({inv_sqrt2, Complex(0.0, inv_sqrt2)}); }

inline kirkwood::DensityMatrix pure_state(const ComplexVector& v) {
    return kirkwood::DensityMatrix::validated(v * v.adjoint());
}

inline kirkwood::OrthonormalBasis standard_basis(int dim) {
    return kirkwood::OrthonormalBasis::validated(ComplexMatrix::Identity(dim, dim));
}

inline kirkwood::OrthonormalBasis plus_minus_basis() {
    ComplexMatrix columns(2, 2);
    columns.col(0) = ket_plus();
    columns.col(1) = ket_minus();
    return kirkwood::OrthonormalBasis::validated(columns);
}

inline kirkwood::PVM z_pvm() { return kirkwood::pvm_from_basis(standard_basis(2)); }
inline kirkwood::PVM x_pvm() { return kirkwood::pvm_from_basis(plus_minus_basis()); }

} // namespace testutil
