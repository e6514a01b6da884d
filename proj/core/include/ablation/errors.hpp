#pragma once

#include <stdexcept>
#include <string>

namespace ablation {

// Bad configuration: malformed parameter files, unknown tissues, invalid
// laser protocols or geometries.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A closed form left the numerically meaningful regime (overflowing
// exponentials, degenerate denominators). Distinct from config_error so the
// CLI can map it to its own exit code.
class regime_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// exp-type blow-up; carries the offending exponent so callers can report it.
class overflow_regime_error : public regime_error {
public:
    overflow_regime_error(const std::string& what, double exponent)
        : regime_error(what), exponent_(exponent) {}
    double exponent() const { return exponent_; }

private:
    double exponent_;
};

// A denominator fell inside its degeneracy tolerance.
class degeneracy_error : public regime_error {
public:
    using regime_error::regime_error;
};

// Iterative machinery (quadrature, root finding, time stepping) failed to
// reach its tolerance; carries the achieved error estimate when known.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what, double achieved = -1.0)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved_error() const { return achieved_; }

private:
    double achieved_;
};

}  // namespace ablation
