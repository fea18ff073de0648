#pragma once

#include <stdexcept>
#include <string>

namespace pdyn {

// Error categories map to CLI exit codes: input -> 1, budget -> 2.
enum class ErrorKind {
    Input,
    Budget,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

struct ZeroPolynomial : Error {
    explicit ZeroPolynomial(const std::string& msg = "operand is the zero polynomial")
        : Error(ErrorKind::Input, "ZeroPolynomial", msg) {}
};

struct VariableAbsent : Error {
    explicit VariableAbsent(const std::string& msg)
        : Error(ErrorKind::Input, "VariableAbsent", msg) {}
};

struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& msg)
        : Error(ErrorKind::Budget, "DegreeOverflow", msg) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg, bool partial = false)
        : Error(ErrorKind::Budget, "BudgetExceeded", msg), partial_results(partial) {}
    bool partial_results;
};

struct SingularCurve : Error {
    explicit SingularCurve(const std::string& msg)
        : Error(ErrorKind::Input, "SingularCurve", msg) {}
};

struct NotInvariant : Error {
    explicit NotInvariant(const std::string& msg)
        : Error(ErrorKind::Input, "NotInvariant", msg) {}
};

struct PreconditionFailed : Error {
    explicit PreconditionFailed(const std::string& msg)
        : Error(ErrorKind::Input, "PreconditionFailed", msg) {}
};

struct BadDegreePattern : Error {
    explicit BadDegreePattern(const std::string& msg)
        : Error(ErrorKind::Input, "BadDegreePattern", msg) {}
};

struct NotCodimOne : Error {
    explicit NotCodimOne(const std::string& msg)
        : Error(ErrorKind::Input, "NotCodimOne", msg) {}
};

struct MismatchedBudgets : Error {
    explicit MismatchedBudgets(const std::string& msg)
        : Error(ErrorKind::Input, "MismatchedBudgets", msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg)
        : Error(ErrorKind::Input, "ParseError", msg) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg)
        : Error(ErrorKind::Input, "InvariantViolation", msg) {}
};

}  // namespace pdyn
