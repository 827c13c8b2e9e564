#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ose {

enum class ViolationKind { Domain, ThetaNearOne };

struct Violation {
    std::string field;
    std::string constraint;
    ViolationKind kind = ViolationKind::Domain;
};

/// Raised by validate_params; carries every violated constraint, not just the first.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    bool theta_near_one() const noexcept;

private:
    std::vector<Violation> violations_;
};

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No open-supply equilibrium: the common market is below the entry threshold.
class BelowEntryThresholdError : public ModelError {
public:
    using ModelError::ModelError;
};

class EmptyRegionError : public ModelError {
public:
    using ModelError::ModelError;
};

class EmptyBracketError : public ModelError {
public:
    using ModelError::ModelError;
};

class GridTooLargeError : public ModelError {
public:
    using ModelError::ModelError;
};

}  // namespace ose
