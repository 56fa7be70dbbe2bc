#include "kirkwood/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "kirkwood/linalg.hpp"
#include "kirkwood/quasiprob.hpp"
#include "kirkwood/reconstruct.hpp"

namespace kirkwood {

namespace {

int dim_for(const VerifyOptions& options, int instance) {
    const int span = options.max_dim - options.min_dim + 1;
    return options.min_dim + instance % span;
}

SplitMix64 instance_rng(const VerifyOptions& options, std::uint64_t instance) {
    return SplitMix64(derive_stream(options.seed, instance));
}

// Block sizes for a degenerate spectrum; the leading block is 2 or 3 wide
// whenever the dimension allows it.
std::vector<int> random_partition(int dim, SplitMix64& rng) {
    std::vector<int> sizes;
    int remaining = dim;
    if (dim >= 4) {
        const int first = 2 + static_cast<int>(rng.next() % 2);
        sizes.push_back(first);
        remaining -= first;
    }
    while (remaining > 0) {
        const int cap = std::min(remaining, 3);
        const int size = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(cap));
        sizes.push_back(size);
        remaining -= size;
    }
    return sizes;
}

PVM pvm_from_partition(const OrthonormalBasis& basis, const std::vector<int>& sizes,
                       const Tolerances& tol) {
    std::vector<Projector> projectors;
    projectors.reserve(sizes.size());
    int offset = 0;
    for (const int size : sizes) {
        const auto block = basis.columns().middleCols(offset, size);
        projectors.push_back(Projector::unchecked(block * block.adjoint(), size));
        offset += size;
    }
    return PVM::validated(std::move(projectors), std::nullopt, tol);
}

PVM random_pvm(int dim, SplitMix64& rng, bool degenerate, const Tolerances& tol) {
    return degenerate ? random_degenerate_pvm(dim, rng, tol) : random_rank1_pvm(dim, rng, tol);
}

struct Instance {
    DensityMatrix rho;
    PVM a;
    PVM b;
};

Instance make_instance(const VerifyOptions& options, int index) {
    SplitMix64 rng = instance_rng(options, static_cast<std::uint64_t>(index));
    const int dim = dim_for(options, index);
    DensityMatrix rho = generate_state(dim, rng, static_cast<std::uint64_t>(index),
                                       options.inject_fault, options.tol);
    PVM a = random_pvm(dim, rng, index % 2 == 1, options.tol);
    PVM b = random_pvm(dim, rng, index % 3 == 2, options.tol);
    return Instance{std::move(rho), std::move(a), std::move(b)};
}

template <typename Body>
FamilyResult guarded_family(const std::string& name, double threshold, Body&& body) {
    FamilyResult result;
    result.name = name;
    result.threshold = threshold;
    try {
        body(result);
        if (!result.inconclusive) {
            result.pass = result.worst_residual <= threshold;
        }
    } catch (const Error& e) {
        result.pass = false;
        result.worst_residual = std::numeric_limits<double>::infinity();
        result.detail = std::string("error: ") + e.what();
    }
    return result;
}

std::string instance_summary(const VerifyOptions& options) {
    std::ostringstream out;
    out << options.instances << " instances, dims " << options.min_dim << ".." << options.max_dim;
    return out.str();
}

// Pair sharing exactly one vector: keep one column, rotate the complement.
BasisPair shared_vector_pair(int dim, SplitMix64& rng, const Tolerances& tol) {
    const ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix v = u;
    const ComplexMatrix w = random_unitary(dim - 1, rng);
    v.rightCols(dim - 1) = u.rightCols(dim - 1) * w;
    return BasisPair(OrthonormalBasis::validated(u, tol), OrthonormalBasis::validated(v, tol));
}

std::vector<ComplexMatrix> hermitian_traceless_basis(int dim) {
    std::vector<ComplexMatrix> basis;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            ComplexMatrix re = ComplexMatrix::Zero(dim, dim);
            re(i, j) = 1.0;
            re(j, i) = 1.0;
            basis.push_back(re);
            ComplexMatrix im = ComplexMatrix::Zero(dim, dim);
            im(i, j) = Complex(0.0, -1.0);
            im(j, i) = Complex(0.0, 1.0);
            basis.push_back(im);
        }
    }
    for (int k = 1; k < dim; ++k) {
        ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
        for (int i = 0; i < k; ++i) {
            d(i, i) = 1.0;
        }
        d(k, k) = -static_cast<double>(k);
        basis.push_back(d);
    }
    return basis;
}

} // namespace

PVM random_rank1_pvm(int dim, SplitMix64& rng, const Tolerances& tol) {
    return pvm_from_basis(random_basis(dim, rng, tol), tol);
}

PVM random_degenerate_pvm(int dim, SplitMix64& rng, const Tolerances& tol) {
    const OrthonormalBasis basis = random_basis(dim, rng, tol);
    return pvm_from_partition(basis, random_partition(dim, rng), tol);
}

DensityMatrix generate_state(int dim, SplitMix64& rng, std::uint64_t counter, bool inject_fault,
                             const Tolerances& tol) {
    if (inject_fault) {
        // What a forgotten hermitization step looks like: a valid spectrum
        // plus an unsymmetrized perturbation, waved through unchecked.
        const ComplexMatrix g = random_gaussian_matrix(dim, dim, rng);
        ComplexMatrix rho = g * g.adjoint();
        rho /= rho.trace();
        for (int i = 0; i < dim; ++i) {
            for (int j = i + 1; j < dim; ++j) {
                rho(i, j) += 1e-4 * Complex(rng.gaussian(), rng.gaussian());
            }
        }
        return DensityMatrix::unchecked(std::move(rho));
    }
    return counter % 2 == 0 ? random_mixed_state(dim, rng, tol) : random_pure_state(dim, rng, tol);
}

FamilyResult verify_marginals(const VerifyOptions& options) {
    return guarded_family("marginals", options.tol.norm, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            const Instance instance = make_instance(options, i);
            const KirkwoodTable table = kirkwood(instance.rho, instance.a, instance.b);
            result.worst_residual =
                std::max({result.worst_residual, table.max_marginal_deviation(),
                          table.max_imaginary_marginal(),
                          std::abs(table.entries().sum() - Complex(1.0, 0.0))});
        }
        result.detail = instance_summary(options);
    });
}

FamilyResult verify_decomposition(const VerifyOptions& options) {
    return guarded_family("decomposition", options.tol.herm, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            const Instance instance = make_instance(options, i);
            const KirkwoodTable table = kirkwood(instance.rho, instance.a, instance.b);
            for (int m = 0; m < instance.a.size(); ++m) {
                for (int n = 0; n < instance.b.size(); ++n) {
                    const DisturbanceDecomposition parts = decompose(
                        instance.rho, instance.a, m, instance.b.projector(n), options.tol);
                    const Complex reassembled(parts.wigner_term + parts.real_disturbance,
                                              parts.imag_disturbance);
                    result.worst_residual =
                        std::max({result.worst_residual, std::abs(table.entry(m, n) - reassembled),
                                  std::abs(parts.kirkwood_value - table.entry(m, n))});
                }
            }
        }
        result.detail = instance_summary(options) + ", every (m, n)";
    });
}

FamilyResult verify_randomization(const VerifyOptions& options) {
    return guarded_family("randomization", options.tol.herm, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            const Instance instance = make_instance(options, i);
            for (int m = 0; m < instance.a.size(); ++m) {
                result.worst_residual =
                    std::max(result.worst_residual,
                             randomization_identity_check(instance.rho, instance.a, m, options.tol));
            }
        }
        result.detail = instance_summary(options) + ", every projector incl. degenerate";
    });
}

FamilyResult verify_post_measurement(const VerifyOptions& options) {
    return guarded_family("post_measurement", options.tol.herm, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            const Instance instance = make_instance(options, i);
            const JointProbabilityTable wigner =
                wigner_joint(instance.rho, instance.a, instance.b, options.tol);
            const RealVector born = born_probabilities(instance.rho, instance.a);
            for (int m = 0; m < instance.a.size(); ++m) {
                if (born(m) <= 1e-6) {
                    continue; // ill-conditioned branch, not part of the contract
                }
                const KirkwoodTable nonselective = kirkwood_after_nonselective(
                    instance.rho, instance.a, m, instance.b, options.tol);
                const KirkwoodTable selective = kirkwood_after_selective(
                    instance.rho, instance.a, m, instance.b, options.tol);
                for (int n = 0; n < instance.b.size(); ++n) {
                    const double wigner_entry = wigner.entries()(m, n);
                    result.worst_residual =
                        std::max({result.worst_residual,
                                  std::abs(nonselective.entry(m, n) - wigner_entry),
                                  std::abs(selective.entry(m, n) - wigner_entry / born(m))});
                }
                for (int k = 0; k < instance.a.size(); ++k) {
                    if (k == m) {
                        continue;
                    }
                    result.worst_residual =
                        std::max(result.worst_residual,
                                 selective.entries().row(k).cwiseAbs().maxCoeff());
                }
            }
        }
        result.detail = instance_summary(options) + ", nonselective row + selective rows";
    });
}

FamilyResult verify_commuting(const VerifyOptions& options) {
    return guarded_family("commuting_classicality", 1e-12, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            SplitMix64 rng = instance_rng(options, static_cast<std::uint64_t>(i) + 0x10000);
            const int dim = dim_for(options, i);
            const DensityMatrix rho = generate_state(dim, rng, static_cast<std::uint64_t>(i),
                                                     options.inject_fault, options.tol);
            const OrthonormalBasis basis = random_basis(dim, rng, options.tol);
            const PVM a = i % 2 == 0 ? pvm_from_basis(basis, options.tol)
                                     : pvm_from_partition(basis, random_partition(dim, rng),
                                                          options.tol);
            const PVM b = pvm_from_partition(basis, random_partition(dim, rng), options.tol);
            const KirkwoodTable table = kirkwood(rho, a, b);
            const double worst_imag = table.entries().imag().cwiseAbs().maxCoeff();
            const double worst_negativity = std::max(0.0, -table.entries().real().minCoeff());
            result.worst_residual =
                std::max({result.worst_residual, worst_imag, worst_negativity});
        }
        result.detail = instance_summary(options) + ", PVMs diagonal in one basis";
    });
}

FamilyResult verify_reconstruction(const VerifyOptions& options) {
    return guarded_family("reconstruction_roundtrip", options.tol.recon, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            SplitMix64 rng = instance_rng(options, static_cast<std::uint64_t>(i) + 0x20000);
            const int dim = dim_for(options, i);
            const DensityMatrix rho = generate_state(dim, rng, static_cast<std::uint64_t>(i),
                                                     options.inject_fault, options.tol);

            const BasisPair schwinger = schwinger_pair(dim);
            BasisPair random_pair(random_basis(dim, rng, options.tol),
                                  random_basis(dim, rng, options.tol));
            // Haar pairs are complementary almost surely; regenerate on the
            // measure-zero miss.
            while (!check_complementary(random_pair, options.tol.overlap).complementary) {
                random_pair = BasisPair(random_basis(dim, rng, options.tol),
                                        random_basis(dim, rng, options.tol));
            }
            for (const BasisPair& pair : {schwinger, random_pair}) {
                const KirkwoodTable table = kirkwood(rho, pvm_from_basis(pair.a(), options.tol),
                                                     pvm_from_basis(pair.b(), options.tol));
                const DensityMatrix rebuilt = reconstruct_density(table, pair, options.tol);
                result.worst_residual = std::max(
                    result.worst_residual, (rebuilt.matrix() - rho.matrix()).norm());
            }
        }

        // The inversion must refuse a pair with a shared vector.
        SplitMix64 rng = instance_rng(options, 0x30000);
        const BasisPair degenerate = shared_vector_pair(3, rng, options.tol);
        const DensityMatrix rho = random_mixed_state(3, rng, options.tol);
        const KirkwoodTable table = kirkwood(rho, pvm_from_basis(degenerate.a(), options.tol),
                                             pvm_from_basis(degenerate.b(), options.tol));
        try {
            reconstruct_density(table, degenerate, options.tol);
            result.worst_residual = std::numeric_limits<double>::infinity();
            result.detail = "shared-vector pair was not rejected";
            return;
        } catch (const NotComplementary&) {
        }
        result.detail = instance_summary(options) + " x {Schwinger, random} pairs + rejection";
    });
}

FamilyResult verify_fourier(const VerifyOptions& options) {
    return guarded_family("fourier_agreement", options.tol.herm, [&](FamilyResult& result) {
        for (int i = 0; i < options.instances; ++i) {
            SplitMix64 rng = instance_rng(options, static_cast<std::uint64_t>(i) + 0x40000);
            const int dim = dim_for(options, i);
            const DensityMatrix rho = generate_state(dim, rng, static_cast<std::uint64_t>(i),
                                                     options.inject_fault, options.tol);
            const BasisPair pair = schwinger_pair(dim);
            const KirkwoodTable table = kirkwood(rho, pvm_from_basis(pair.a(), options.tol),
                                                 pvm_from_basis(pair.b(), options.tol));
            const DensityMatrix direct = reconstruct_density(table, pair, options.tol);
            const DensityMatrix fourier = reconstruct_fourier(table, dim, options.tol);
            result.worst_residual =
                std::max(result.worst_residual, max_abs(direct.matrix() - fourier.matrix()));
        }
        result.detail = instance_summary(options) + ", Schwinger pairs";
    });
}

FamilyResult verify_mh_witness(const VerifyOptions& options) {
    return guarded_family("mh_incompleteness_witness", options.tol.norm, [&](FamilyResult& result) {
        for (int dim = 2; dim <= 3; ++dim) {
            const BasisPair pair = schwinger_pair(dim);
            const PVM a_pvm = pvm_from_basis(pair.a(), options.tol);
            const PVM b_pvm = pvm_from_basis(pair.b(), options.tol);

            // Real-linear map delta -> Re Tr(delta A_k B_m) on traceless
            // hermitian matrices; a kernel direction leaves the
            // Margenau-Hill table fixed while moving the state.
            const std::vector<ComplexMatrix> directions = hermitian_traceless_basis(dim);
            RealMatrix map(dim * dim, static_cast<int>(directions.size()));
            for (std::size_t j = 0; j < directions.size(); ++j) {
                int row = 0;
                for (int k = 0; k < dim; ++k) {
                    for (int m = 0; m < dim; ++m) {
                        const ComplexMatrix product =
                            a_pvm.projector(k).matrix() * b_pvm.projector(m).matrix();
                        map(row++, static_cast<int>(j)) =
                            trace_product(directions[j], product).real();
                    }
                }
            }
            Eigen::JacobiSVD<RealMatrix> svd(map, Eigen::ComputeFullV);
            const auto& singular = svd.singularValues();
            if (singular(singular.size() - 1) > 1e-12) {
                continue; // the MH map is injective here; try the next dim
            }
            const RealVector kernel = svd.matrixV().col(singular.size() - 1);
            ComplexMatrix delta = ComplexMatrix::Zero(dim, dim);
            for (std::size_t j = 0; j < directions.size(); ++j) {
                delta += kernel(static_cast<int>(j)) * directions[j];
            }
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(delta, Eigen::EigenvaluesOnly);
            const double spread = eig.eigenvalues().cwiseAbs().maxCoeff();
            const double step = 0.5 / (dim * spread);
            const ComplexMatrix center = ComplexMatrix::Identity(dim, dim) / double(dim);
            const DensityMatrix plus = validate_density(center + step * delta, options.tol);
            const DensityMatrix minus = validate_density(center - step * delta, options.tol);

            const double mh_gap =
                (margenau_hill(plus, a_pvm, b_pvm) - margenau_hill(minus, a_pvm, b_pvm))
                    .cwiseAbs()
                    .maxCoeff();
            const double state_gap = (plus.matrix() - minus.matrix()).norm();
            const double imag_gap = (kirkwood(plus, a_pvm, b_pvm).entries() -
                                     kirkwood(minus, a_pvm, b_pvm).entries())
                                        .imag()
                                        .cwiseAbs()
                                        .maxCoeff();
            if (mh_gap <= options.tol.norm && state_gap >= 1e-3 && imag_gap > 1e-6) {
                result.worst_residual = mh_gap;
                std::ostringstream detail;
                detail << "found at dim " << dim << ": state distance " << state_gap
                       << ", MH deviation " << mh_gap << ", imaginary-part gap " << imag_gap;
                result.detail = detail.str();
                return;
            }
        }
        result.inconclusive = true;
        result.pass = true;
        result.detail = "no witness pair found at dims 2-3; search inconclusive";
    });
}

std::vector<FamilyResult> run_verification(const VerifyOptions& options) {
    return {
        verify_marginals(options),      verify_decomposition(options),
        verify_randomization(options),  verify_post_measurement(options),
        verify_commuting(options),      verify_reconstruction(options),
        verify_fourier(options),        verify_mh_witness(options),
    };
}

} // namespace kirkwood
