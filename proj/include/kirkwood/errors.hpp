#pragma once

#include <stdexcept>
#include <string>

namespace kirkwood {

// Stable error classes. Each maps to a distinct CLI exit code (see cli.hpp).
enum class ErrorCode {
    generic = 1,
    parse_error = 2,
    dim_mismatch = 3,
    not_hermitian = 4,
    not_unit_trace = 5,
    not_positive = 6,
    zero_probability_branch = 7,
    index_out_of_range = 8,
    not_complementary = 9,
    not_physical = 10,
    invalid_dimension = 11,
    not_normalized = 12,
    not_orthonormal = 13,
    not_projector = 14,
    not_pvm = 15,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorCode::parse_error, what) {}
};

struct DimMismatch : Error {
    explicit DimMismatch(const std::string& what) : Error(ErrorCode::dim_mismatch, what) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& what) : Error(ErrorCode::not_hermitian, what) {}
};

struct NotUnitTrace : Error {
    explicit NotUnitTrace(const std::string& what) : Error(ErrorCode::not_unit_trace, what) {}
};

struct NotPositive : Error {
    explicit NotPositive(const std::string& what) : Error(ErrorCode::not_positive, what) {}
};

struct ZeroProbabilityBranch : Error {
    explicit ZeroProbabilityBranch(const std::string& what)
        : Error(ErrorCode::zero_probability_branch, what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what)
        : Error(ErrorCode::index_out_of_range, what) {}
};

struct NotComplementary : Error {
    explicit NotComplementary(const std::string& what)
        : Error(ErrorCode::not_complementary, what) {}
};

struct NotPhysical : Error {
    explicit NotPhysical(const std::string& what) : Error(ErrorCode::not_physical, what) {}
};

struct InvalidDimension : Error {
    explicit InvalidDimension(const std::string& what)
        : Error(ErrorCode::invalid_dimension, what) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& what) : Error(ErrorCode::not_normalized, what) {}
};

struct NotOrthonormal : Error {
    explicit NotOrthonormal(const std::string& what) : Error(ErrorCode::not_orthonormal, what) {}
};

struct NotProjector : Error {
    explicit NotProjector(const std::string& what) : Error(ErrorCode::not_projector, what) {}
};

struct NotPVM : Error {
    explicit NotPVM(const std::string& what) : Error(ErrorCode::not_pvm, what) {}
};

} // namespace kirkwood
