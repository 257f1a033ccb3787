#pragma once

#include <stdexcept>
#include <string>

namespace cubicalforms {

// Base class for every arithmetic or domain error thrown by this library.
struct MathError : std::runtime_error {
  explicit MathError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : MathError {
  explicit DivisionByZero(const std::string& msg = "division by zero") : MathError(msg) {}
};

// A two-local scalar can only be inverted when its numerator is odd.
struct NotTwoLocallyInvertible : MathError {
  explicit NotTwoLocallyInvertible(const std::string& msg) : MathError(msg) {}
};

struct UnknownVariable : MathError {
  explicit UnknownVariable(const std::string& msg) : MathError(msg) {}
};

struct VariableMismatch : MathError {
  explicit VariableMismatch(const std::string& msg) : MathError(msg) {}
};

// Raised by modular reduction when a denominator is not invertible mod p.
struct NonIntegerCoefficient : MathError {
  explicit NonIntegerCoefficient(const std::string& msg) : MathError(msg) {}
};

struct NonUnitConstantTerm : MathError {
  explicit NonUnitConstantTerm(const std::string& msg) : MathError(msg) {}
};

struct NonPositiveValuation : MathError {
  explicit NonPositiveValuation(const std::string& msg) : MathError(msg) {}
};

struct NotDivisible : MathError {
  explicit NotDivisible(const std::string& msg) : MathError(msg) {}
};

struct BeyondTruncation : MathError {
  explicit BeyondTruncation(const std::string& msg) : MathError(msg) {}
};

// Coordinate changes require the scaling parameter u to be an invertible constant.
struct NonUnitU : MathError {
  explicit NonUnitU(const std::string& msg) : MathError(msg) {}
};

// Two internal computation routes that must agree did not; always a bug.
struct InternalMismatch : MathError {
  explicit InternalMismatch(const std::string& msg) : MathError(msg) {}
};

struct NotSymmetric : MathError {
  explicit NotSymmetric(const std::string& msg) : MathError(msg) {}
};

// A recomputed quantity does not match its pinned reference value.
struct PinnedValueMismatch : MathError {
  explicit PinnedValueMismatch(const std::string& msg) : MathError(msg) {}
};

struct MalformedElement : MathError {
  explicit MalformedElement(const std::string& msg) : MathError(msg) {}
};

// A spectral-sequence query requires data outside the requested window.
struct WindowTooSmall : MathError {
  explicit WindowTooSmall(const std::string& msg) : MathError(msg) {}
};

struct TextParseError : MathError {
  explicit TextParseError(const std::string& msg) : MathError(msg) {}
};

}  // namespace cubicalforms
