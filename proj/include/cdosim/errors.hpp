#ifndef CDOSIM_ERRORS_HPP
#define CDOSIM_ERRORS_HPP

#include <stdexcept>

namespace cdosim {

// Base type for all simulator-specific failures.
class SimError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dimension disagreement between states and/or operators.
class DimensionMismatchError : public SimError {
public:
    using SimError::SimError;
};

// Amplitude too large for the truncated space (|alpha|^2 > dim/4), or a
// lattice whose corners violate that bound.
class TruncationRiskError : public SimError {
public:
    using SimError::SimError;
};

// A state required to be normalized was not.
class NormalizationError : public SimError {
public:
    using SimError::SimError;
};

// Post-selection branch probability below the normalization floor.
class PostselectionError : public SimError {
public:
    using SimError::SimError;
};

// Chi/Wigner lattice guard violated (Nyquist-style or extent checks).
class GridError : public SimError {
public:
    using SimError::SimError;
};

// Monte Carlo run produced no registered detection events.
class StatisticsError : public SimError {
public:
    using SimError::SimError;
};

} // namespace cdosim

#endif
