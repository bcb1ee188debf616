#pragma once

#include <stdexcept>
#include <string>

namespace nftrec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: token references, JSON files, index files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A token reference that is not part of the loaded collection.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Arguments outside an operation's domain (e.g. c_t = 0, bad page size).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Filesystem failures. The message carries the path and the OS error.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace nftrec
