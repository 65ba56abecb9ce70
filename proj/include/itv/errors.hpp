#pragma once

#include <stdexcept>
#include <string>

namespace itv {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeOutOfRange : public Error {
public:
    using Error::Error;
};

class GradeMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A 2-form that was required to be decomposable is not.
class NotSimple : public Error {
public:
    using Error::Error;
};

class ZeroForm : public Error {
public:
    using Error::Error;
};

/// An identity that holds for every valid input was violated; this points at
/// a bug in the connection or frame code rather than at the caller.
class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

} // namespace itv
