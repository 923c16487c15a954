#pragma once

#include <stdexcept>
#include <string>

namespace twc {

/// Malformed input: shape mismatches, bad references, unparsable files.
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical invariant the caller promised does not hold (d^2 != 0, non-chain-map, ...).
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

/// The truncation window is too small to represent a possibly nonzero component.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// A pinned convention self-check failed (gauge residual, homotopy extraction, ...).
class ConventionError : public std::runtime_error {
public:
    explicit ConventionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace twc
