#pragma once
#include <stdexcept>
#include <string>

namespace greensign {

// Bad index sets, out-of-range arguments, malformed descriptors.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation requires a sign case or hypothesis the input does not meet.
struct NotApplicableError : std::logic_error {
    using std::logic_error::logic_error;
};

// Augmented index already present in the target set.
struct DegenerateSpaceError : std::logic_error {
    using std::logic_error::logic_error;
};

// Boundary matrix singular at the requested M.
struct EigenvalueCollisionError : std::runtime_error {
    double det_magnitude;
    EigenvalueCollisionError(const std::string& what, double det)
        : std::runtime_error(what), det_magnitude(det) {}
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An eigenvalue needed by a prediction was not bracketed by the scan.
struct EigenNotFoundError : std::runtime_error {
    double m_max;
    EigenNotFoundError(const std::string& what, double mmax)
        : std::runtime_error(what), m_max(mmax) {}
};

} // namespace greensign
