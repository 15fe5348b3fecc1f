#pragma once

#include <stdexcept>
#include <string>

namespace lmorse {

// Base for every failure raised by the library. Messages are meant to be
// shown to a CLI user as-is.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input file.
class FormatError : public Error {
public:
    using Error::Error;
};

// A cached artifact does not match the inputs that should have produced it.
class StaleArtifactError : public Error {
public:
    using Error::Error;
};

}  // namespace lmorse
