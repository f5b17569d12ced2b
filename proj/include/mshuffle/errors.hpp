#pragma once

#include <stdexcept>
#include <string>

namespace mshuffle {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation hit a genuine zero denominator; samplers retry on this family.
class PoleError : public Error {
 public:
  using Error::Error;
};

class DivisionByExactZero : public PoleError {
 public:
  DivisionByExactZero() : PoleError("division by an exact zero") {}
  using PoleError::PoleError;
};

class PoleAtArgument : public PoleError {
 public:
  using PoleError::PoleError;
};

class SingularAtArgument : public PoleError {
 public:
  using PoleError::PoleError;
};

class SumOfVariablesZero : public PoleError {
 public:
  using PoleError::PoleError;
};

/// Raised after the sampler exhausted its retry budget.
class EvaluationAtPole : public Error {
 public:
  using Error::Error;
};

/// Not enough jet terms to answer: a leading coefficient was lost to truncation.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class PoleOrderExceedsJet : public Error {
 public:
  using Error::Error;
};

class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class PositionOutOfRange : public Error {
 public:
  using Error::Error;
};

class BadPermutation : public Error {
 public:
  using Error::Error;
};

class GradingMismatch : public Error {
 public:
  using Error::Error;
};

class SlotOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonReducedWord : public Error {
 public:
  using Error::Error;
};

class TagMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedSuperMinus : public Error {
 public:
  using Error::Error;
};

class WheelViolation : public Error {
 public:
  using Error::Error;
};

class NotSlopeZero : public Error {
 public:
  using Error::Error;
};

class CharacteristicDivision : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mshuffle
