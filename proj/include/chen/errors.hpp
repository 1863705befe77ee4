#pragma once

#include <stdexcept>
#include <string>

namespace chen {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    Usage,
    DegenerateInput,
    Boundary,
    Singularity,
    Divergence,
    Range,
    NotLagrangian,
    Frame,
    ImmersionFailure,
    Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Gram-Schmidt pivot failure; carries the offending input index.
class DegenerateInputError : public Error {
public:
    DegenerateInputError(std::size_t pivot, const std::string& what)
        : Error(ErrorKind::DegenerateInput, what), pivot_(pivot) {}
    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class BoundaryError : public Error {
public:
    BoundaryError(double required_margin, const std::string& what)
        : Error(ErrorKind::Boundary, what), required_margin_(required_margin) {}
    double required_margin() const noexcept { return required_margin_; }

private:
    double required_margin_;
};

}  // namespace chen
