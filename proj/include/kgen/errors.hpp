#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kgen {

/// Input data (CSV file, schema flags) cannot be used as given.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested inequality measure does not exist for the given parameters
/// (the moment-existence condition fails).
class UndefinedMeasure : public std::domain_error {
public:
    explicit UndefinedMeasure(const std::string& what) : std::domain_error(what) {}
};

/// Outcome of a single optimizer start, kept for failure diagnostics.
struct StartDiagnostic {
    double alpha0 = 0.0;
    double kappa0 = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// No optimizer start converged.
class FitError : public std::runtime_error {
public:
    FitError(const std::string& what, std::vector<StartDiagnostic> starts)
        : std::runtime_error(what), starts_(std::move(starts)) {}
    const std::vector<StartDiagnostic>& starts() const { return starts_; }

private:
    std::vector<StartDiagnostic> starts_;
};

}  // namespace kgen
