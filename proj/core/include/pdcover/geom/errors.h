#pragma once

#include <stdexcept>
#include <string>

namespace pdc {

enum class ErrorKind {
    InvalidInput,
    VerticalEdge,
    SelfIntersecting,
    Degenerate,
    Swallowed,
    Disconnected,
    NotCoverFree,
    NotPseudodisks,
    IntervalUndefined,
    Unbalanced,
    SamplingFailed,
    MalformedEncoding,
    BudgetTooLarge,
    Infeasible,
    TooLarge,
    HeavyMember,
    NetValidationFailed,
    ApexInside,
    SpecInvalid,
    CorpusInvalid,
};

const char* error_kind_name(ErrorKind kind);

/// Structured failure raised by every module.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pdc
