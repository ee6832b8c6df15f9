#pragma once

#include <stdexcept>
#include <string>

namespace alfeld {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (wrong shape, bad parameter, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure could not deliver its contract.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace alfeld

#define ALFELD_REQUIRE(cond, ExcType, msg)                                    \
    do {                                                                      \
        if (!(cond)) throw ExcType(std::string(msg));                         \
    } while (false)
