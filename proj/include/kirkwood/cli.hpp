#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "kirkwood/document.hpp"
#include "kirkwood/verify.hpp"

namespace kirkwood::cli {

// Stable exit codes: 0 success, one code per error class, 20 for a failed
// verification run. Argument errors keep CLI11's own codes.
inline constexpr int kVerifyFailedExit = 20;
int exit_code_for(const Error& error);

Document run_gen_state(int dim, const std::string& kind, std::uint64_t seed,
                       const Tolerances& tol = {});

Document run_gen_basis(int dim, const std::string& kind, std::uint64_t seed,
                       const Tolerances& tol = {});

// Kirkwood table of a state over two bases, with the marginal checks
// embedded in the document metadata.
Document run_kirkwood(const std::filesystem::path& state_file,
                      const std::filesystem::path& basis_a_file,
                      const std::filesystem::path& basis_b_file, const Tolerances& tol = {});

// Inverts a table back to a state; --fourier selects the DFT path and
// requires the Schwinger pair. Reconstruction diagnostics land in metadata.
Document run_reconstruct(const std::filesystem::path& table_file,
                         const std::filesystem::path& basis_a_file,
                         const std::filesystem::path& basis_b_file, bool fourier,
                         const Tolerances& tol = {});

// Simulated successive measurements plus a comparison block against the
// exact joint probabilities.
Document run_simulate(const std::filesystem::path& state_file,
                      const std::filesystem::path& basis_a_file,
                      const std::filesystem::path& basis_b_file, std::int64_t trials,
                      std::uint64_t seed, const Tolerances& tol = {});

Document run_verify(const VerifyOptions& options);

// True when every family in a verify report passed (inconclusive counts as
// not failed).
bool report_all_pass(const Document& report);

} // namespace kirkwood::cli
