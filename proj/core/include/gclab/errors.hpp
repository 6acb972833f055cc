#ifndef GCLAB_ERRORS_HPP
#define GCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gclab {

/// Thrown when a time integration produces NaN/Inf; carries the failing substep.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, long substep)
        : std::runtime_error(what), substep_(substep) {}
    long substep() const { return substep_; }

private:
    long substep_;
};

/// Mismatched truncation between fields, weights or grids.
class DimensionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid kernel domain [-L, L] too small; carries the measured boundary leakage.
class DomainTooSmallError : public std::runtime_error {
public:
    DomainTooSmallError(const std::string& what, double leakage)
        : std::runtime_error(what), leakage_(leakage) {}
    double leakage() const { return leakage_; }

private:
    double leakage_;
};

/// Iterative solver did not converge; carries the last residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Run-configuration schema violation; carries the offending key path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::string path)
        : std::runtime_error(what + " (at " + path + ")"), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Not enough data for a statistical estimate (burn-in/block preconditions).
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gclab

#endif
