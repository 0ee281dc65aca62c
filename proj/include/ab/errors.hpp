#ifndef AB_ERRORS_HPP
#define AB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ab {

/// Base of all library errors. `code()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class BranchError : public Error {
public:
    explicit BranchError(const std::string& what) : Error("branch", what) {}
};

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what, double nearby = 0.0)
        : Error("singular_matrix", what), nearby_(nearby) {}
    double nearby() const noexcept { return nearby_; }

private:
    double nearby_;
};

/// Raised when a parametrization cannot be represented in the requested form.
class ConversionError : public Error {
public:
    ConversionError(std::string reason, const std::string& what)
        : Error(std::move(reason), what) {}
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : Error("no_convergence", what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace ab

#endif
