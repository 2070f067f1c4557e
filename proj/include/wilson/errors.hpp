#ifndef WILSON_ERRORS_HPP
#define WILSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wilson {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation of a function handle failed (non-finite value, bad point, ...).
struct EvaluationError : Error {
    explicit EvaluationError(const std::string& what) : Error(what) {}
};

// log_gamma at a non-positive integer.
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(what) {}
};

// A divided-difference denominator (or Cooper Pochhammer factor) collapsed.
struct DegenerateNodeError : Error {
    explicit DegenerateNodeError(const std::string& what) : Error(what) {}
};

struct ZeroDenominatorError : Error {
    explicit ZeroDenominatorError(const std::string& what) : Error(what) {}
};

// A series ran out of coefficients before a stopping rule certified the result.
struct TruncationError : Error {
    TruncationError(const std::string& what, double last_term_magnitude)
        : Error(what), last_term(last_term_magnitude) {}
    double last_term;
};

// An operation was called outside its stated domain.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace wilson

#endif
