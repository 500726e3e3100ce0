#ifndef DRSN_ERRORS_HPP
#define DRSN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drsn {

// Base class for all engine errors. Subclasses name the violated contract.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& msg = "constant term is numerically zero") : Error(msg) {}
};

struct DivergentSubstitution : Error {
    explicit DivergentSubstitution(const std::string& msg = "substituted series has nonzero constant term")
        : Error(msg) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& msg = "not invertible") : Error(msg) {}
};

struct OrderTooLow : Error {
    explicit OrderTooLow(const std::string& msg = "vector field order too low for exp") : Error(msg) {}
};

struct NotSingular : Error {
    explicit NotSingular(const std::string& msg = "vector field does not vanish at the origin") : Error(msg) {}
};

struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& msg = "wedge product exceeds top degree") : Error(msg) {}
};

struct NotXDivisible : Error {
    explicit NotXDivisible(const std::string& msg = "series is not divisible by x") : Error(msg) {}
};

struct MalformedInput : Error {
    explicit MalformedInput(const std::string& msg) : Error(msg) {}
};

struct NonDiagonalLinearPart : Error {
    explicit NonDiagonalLinearPart(const std::string& msg = "linear part is not diag(0,-lambda,lambda)")
        : Error(msg) {}
};

struct Degenerate : Error {
    explicit Degenerate(const std::string& msg) : Error(msg) {}
};

struct JetOrderMismatch : Error {
    explicit JetOrderMismatch(const std::string& msg = "parameter jets have different v-orders") : Error(msg) {}
};

struct NotHamiltonianForm : Error {
    explicit NotHamiltonianForm(const std::string& msg = "parameters are not a transversally Hamiltonian form")
        : Error(msg) {}
};

struct ZeroLeadingPeriod : Error {
    explicit ZeroLeadingPeriod(const std::string& msg = "leading period coefficient is zero") : Error(msg) {}
};

struct DegenerateQuadraticPart : Error {
    explicit DegenerateQuadraticPart(const std::string& msg = "quadratic part of the Hamiltonian is degenerate")
        : Error(msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
    std::size_t position;
};

} // namespace drsn

#endif
