#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace traincap {

/// Base class for all traincap errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries a 1-based line number (0 = not line-addressable).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Two catalog rows share the same (layer, algorithm, batch) key.
class DuplicateKeyError : public Error {
public:
    using Error::Error;
};

/// A (layer, batch) pair has no cost entry at all.
class IncompleteCatalogError : public Error {
public:
    using Error::Error;
};

/// Exact integer arithmetic left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Shape propagation produced a dimension below 1.
class NonPositiveShapeError : public Error {
public:
    NonPositiveShapeError(const std::string& msg, int layer_id)
        : Error(msg), layer_id_(layer_id) {}
    int layer_id() const noexcept { return layer_id_; }

private:
    int layer_id_;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Unknown or missing unit suffix on a quantity.
class UnitError : public Error {
public:
    using Error::Error;
};

/// Step trace lacks a positive GPU-processing time.
class MissingComputeStepError : public Error {
public:
    using Error::Error;
};

/// Exhaustive enumeration refused: search space over the guard.
class InstanceTooLargeError : public Error {
public:
    using Error::Error;
};

/// A requested mini-batch size is not declared in the catalog.
class CandidateNotInCatalogError : public Error {
public:
    using Error::Error;
};

/// Network failed validation before planning.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace traincap
