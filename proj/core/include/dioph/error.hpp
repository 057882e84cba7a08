#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A continued-fraction enclosure could not decide a comparison within its budget.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// An enumeration box exceeds the configured lattice-point cap.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class InvalidWindow : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Some norm in a window is not covered by any [U_k, V_k) interval.
class CoverageGap : public Error {
public:
    using Error::Error;
};

/// Malformed literal, matrix file or config.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Inputs violate a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace dioph
