#pragma once

#include <stdexcept>
#include <string>

namespace padicl {

// Exit-code families used by the CLI: parse 1, hypothesis 2, precision 3, resource 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 2; }
};

class ParseError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 1; }
};

class HypothesisError : public Error {
 public:
  using Error::Error;
};

class UnitRequiredError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class SupportError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class SingularElementError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class PoleError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class AdmissibilityError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class NoAdmissiblePrimeError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class UnsupportedCharacterError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class PrecisionError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class ResourceError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

}  // namespace padicl
