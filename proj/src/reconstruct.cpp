#include "kirkwood/reconstruct.hpp"

#include "kirkwood/linalg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

namespace kirkwood {

namespace {

// The table must cover every outcome of a nondegenerate pair, one rank-1
// projector per basis vector, matching the pair's own projectors.
void require_table_over_pair(const KirkwoodTable& table, const BasisPair& pair,
                             const Tolerances& tol) {
    const int dim = pair.dim();
    if (table.rows() != dim || table.cols() != dim) {
        std::ostringstream msg;
        msg << "table is " << table.rows() << "x" << table.cols()
            << " but the basis pair has dimension " << dim;
        throw DimMismatch(msg.str());
    }
    double worst = 0.0;
    for (int k = 0; k < dim; ++k) {
        const ComplexVector a_k = pair.a().vector(k);
        const ComplexVector b_k = pair.b().vector(k);
        worst = std::max(worst, max_abs(table.a_pvm().projector(k).matrix() - a_k * a_k.adjoint()));
        worst = std::max(worst, max_abs(table.b_pvm().projector(k).matrix() - b_k * b_k.adjoint()));
    }
    if (worst > tol.recon) {
        std::ostringstream msg;
        msg << "table PVMs do not match the basis pair (max projector deviation " << worst << ")";
        throw NotPhysical(msg.str());
    }
}

DensityMatrix gate_physical(const ComplexMatrix& raw, const Tolerances& tol,
                            ReconstructionDiagnostics* diagnostics) {
    // Physicality is judged at the reconstruction budget, not the stricter
    // validation tolerance: exact forward tables land orders of magnitude
    // inside it, inconsistent tables outside.
    Tolerances gate = tol;
    gate.herm = tol.recon;
    gate.norm = tol.recon;
    gate.psd = tol.recon;
    DensityMatrix state = [&] {
        try {
            return DensityMatrix::validated(raw, gate);
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "reassembled matrix is not a physical state: " << e.what();
            throw NotPhysical(msg.str());
        }
    }();
    if (diagnostics != nullptr) {
        diagnostics->raw_hermiticity = hermiticity_residual(raw);
        diagnostics->physicality_residual = (raw - state.matrix()).norm();
    }
    return state;
}

} // namespace

BasisPair::BasisPair(OrthonormalBasis a, OrthonormalBasis b)
    : a_(std::move(a)), b_(std::move(b)), overlaps_(overlap_matrix(a_, b_)) {}

ComplementarityReport check_complementary(const BasisPair& pair, double tol_overlap) {
    ComplementarityReport report;
    report.min_overlap = std::abs(pair.overlaps()(0, 0));
    for (int k = 0; k < pair.dim(); ++k) {
        for (int m = 0; m < pair.dim(); ++m) {
            const double modulus = std::abs(pair.overlaps()(k, m));
            report.min_overlap = std::min(report.min_overlap, modulus);
            if (modulus <= tol_overlap) {
                report.offending.emplace_back(k, m);
            }
        }
    }
    report.complementary = report.offending.empty();
    return report;
}

bool check_mub(const BasisPair& pair, double tol) {
    const double target = 1.0 / std::sqrt(static_cast<double>(pair.dim()));
    for (int k = 0; k < pair.dim(); ++k) {
        for (int m = 0; m < pair.dim(); ++m) {
            if (std::abs(std::abs(pair.overlaps()(k, m)) - target) > tol) {
                return false;
            }
        }
    }
    return true;
}

BasisPair schwinger_pair(int n) {
    if (n < 2) {
        std::ostringstream msg;
        msg << "Schwinger pair needs dimension >= 2, got " << n;
        throw InvalidDimension(msg.str());
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix b(n, n);
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            // <a_m|b_k> with index origin 0; reduce m*k mod n before the
            // trig evaluation to keep the phases exact-ish at large n.
            const long long phase_index = (static_cast<long long>(m) * k) % n;
            const double angle =
                2.0 * std::numbers::pi * static_cast<double>(phase_index) / static_cast<double>(n);
            b(m, k) = scale * Complex(std::cos(angle), std::sin(angle));
        }
    }
    OrthonormalBasis standard =
        OrthonormalBasis::validated(ComplexMatrix::Identity(n, n));
    return BasisPair(std::move(standard), OrthonormalBasis::validated(b));
}

DensityMatrix reconstruct_density(const KirkwoodTable& table, const BasisPair& pair,
                                  const Tolerances& tol, ReconstructionDiagnostics* diagnostics) {
    require_table_over_pair(table, pair, tol);
    const ComplementarityReport report = check_complementary(pair, tol.overlap);
    if (!report.complementary) {
        std::ostringstream msg;
        msg << report.offending.size() << " overlaps at or below " << tol.overlap
            << " (smallest |<a_k|b_m>| = " << report.min_overlap << "); first offender (k, m) = ("
            << report.offending.front().first << ", " << report.offending.front().second << ")";
        throw NotComplementary(msg.str());
    }
    if (diagnostics != nullptr) {
        diagnostics->min_overlap = report.min_overlap;
    }

    const int dim = pair.dim();
    const ComplexMatrix& overlaps = pair.overlaps();
    ComplexMatrix b_repr(dim, dim); // <b_m|rho|b_n>
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            Complex sum = 0.0;
            for (int k = 0; k < dim; ++k) {
                sum += overlaps(k, n) / overlaps(k, m) * table.entry(k, m);
            }
            b_repr(m, n) = sum;
        }
    }
    const ComplexMatrix raw = pair.b().columns() * b_repr * pair.b().columns().adjoint();
    return gate_physical(raw, tol, diagnostics);
}

DensityMatrix reconstruct_fourier(const KirkwoodTable& table, int n, const Tolerances& tol) {
    const BasisPair pair = schwinger_pair(n);
    if (table.rows() != n || table.cols() != n) {
        std::ostringstream msg;
        msg << "table is " << table.rows() << "x" << table.cols() << " but n = " << n;
        throw DimMismatch(msg.str());
    }
    ComplexMatrix b_repr(n, n);
    for (int m = 0; m < n; ++m) {
        for (int col = 0; col < n; ++col) {
            Complex sum = 0.0;
            for (int k = 0; k < n; ++k) {
                long long phase_index = (static_cast<long long>(k) * (col - m)) % n;
                if (phase_index < 0) {
                    phase_index += n;
                }
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase_index) /
                                     static_cast<double>(n);
                sum += Complex(std::cos(angle), std::sin(angle)) * table.entry(k, m);
            }
            b_repr(m, col) = sum;
        }
    }
    const ComplexMatrix raw = pair.b().columns() * b_repr * pair.b().columns().adjoint();
    return gate_physical(raw, tol, nullptr);
}

KirkwoodTable kirkwood_rebase(const KirkwoodTable& table, const BasisPair& from,
                              const BasisPair& to, const Tolerances& tol) {
    const DensityMatrix state = reconstruct_density(table, from, tol);
    return kirkwood(state, pvm_from_basis(to.a(), tol), pvm_from_basis(to.b(), tol));
}

} // namespace kirkwood
