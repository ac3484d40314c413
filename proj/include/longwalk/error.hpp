#pragma once

#include <stdexcept>
#include <string>

namespace longwalk {

enum class ErrorKind {
    InvalidArgument,  // malformed input: dimension mismatch, non-finite, odd l, ...
    Domain,           // well-formed but outside the protocol's regime
    PrecisionGuard,   // recursion depth too large for double precision
    Numerical,        // iteration failed to converge
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by build_effective_chain when eps * ||H|| is not small against the gap.
class PrecisionGuardError : public Error {
public:
    PrecisionGuardError(const std::string& what, int max_admissible_l)
        : Error(ErrorKind::PrecisionGuard, what), max_l_(max_admissible_l) {}
    /// Largest even l passing the guard for the same (d, alpha); 0 if none.
    int max_admissible_l() const noexcept { return max_l_; }

private:
    int max_l_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

}  // namespace longwalk
