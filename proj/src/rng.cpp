#include "kirkwood/rng.hpp"

#include <cmath>
#include <numbers>

namespace kirkwood {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::gaussian() {
    if (has_cached_gaussian_) {
        has_cached_gaussian_ = false;
        return cached_gaussian_;
    }
    // Box-Muller; u1 is kept away from 0 so the log is finite.
    const double u1 = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_gaussian_ = true;
    return radius * std::cos(angle);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

ComplexMatrix random_gaussian_matrix(int rows, int cols, SplitMix64& rng) {
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix random_unitary(int dim, SplitMix64& rng) {
    const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the column phases so the distribution is Haar.
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

DensityMatrix random_pure_state(int dim, SplitMix64& rng, const Tolerances& tol) {
    ComplexVector v = random_gaussian_matrix(dim, 1, rng);
    v.normalize();
    return DensityMatrix::validated(v * v.adjoint(), tol);
}

DensityMatrix random_mixed_state(int dim, SplitMix64& rng, const Tolerances& tol) {
    const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return DensityMatrix::validated(rho, tol);
}

OrthonormalBasis random_basis(int dim, SplitMix64& rng, const Tolerances& tol) {
    return OrthonormalBasis::validated(random_unitary(dim, rng), tol);
}

} // namespace kirkwood
