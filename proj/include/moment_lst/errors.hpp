#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlst {

enum class ErrorCode {
    DivisionByZero,
    AllZero,
    HermiticityViolation,
    NotAnalytic,
    OutOfWindow,
    Unsupported,
    NotAnRM,
    DeltaAmbiguity,
    VerificationFailed,
    NoLinearFactor,
    NoDegreeToSplit,
    DegenerateConstantFunctional,
    ChainMismatch,
    ConstraintViolation,
    ParseError,
    MixedBackend,
    InvalidArgument,
    Cancelled,
};

/// Machine-readable snake_case name, used in JSON reports.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

class ParseError : public Error {
   public:
    ParseError(int line, int column, std::string expected)
        : Error(ErrorCode::ParseError, "parse error at " + std::to_string(line) + ":" +
                                           std::to_string(column) + ": expected " + expected),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }

   private:
    int line_;
    int column_;
    std::string expected_;
};

}  // namespace mlst
