#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace thetakit {

enum class ErrorKind {
  Domain,
  PrecisionExhausted,
  Pole,
  Range,
  InvariantViolation,
  CrossValidation,
  Verification,
  LimitFailure,
  Singularity,
  UnknownFunction,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what) : Error(ErrorKind::PrecisionExhausted, what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(ErrorKind::Pole, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::Range, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what) : Error(ErrorKind::Singularity, what) {}
};

class UnknownFunction : public Error {
 public:
  explicit UnknownFunction(const std::string& what) : Error(ErrorKind::UnknownFunction, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class LimitFailure : public Error {
 public:
  explicit LimitFailure(const std::string& what) : Error(ErrorKind::LimitFailure, what) {}
};

/// A mathematical claim that the computation found to be false.  `claim`
/// names the statement being falsified.
class ClaimError : public Error {
 public:
  ClaimError(ErrorKind kind, std::string claim, const std::string& detail)
      : Error(kind, claim + ": " + detail), claim_(std::move(claim)) {}
  const std::string& claim() const noexcept { return claim_; }

 private:
  std::string claim_;
};

class InvariantViolation : public ClaimError {
 public:
  InvariantViolation(std::string claim, const std::string& detail)
      : ClaimError(ErrorKind::InvariantViolation, std::move(claim), detail) {}
};

class CrossValidationFailure : public ClaimError {
 public:
  CrossValidationFailure(std::string claim, const std::string& detail)
      : ClaimError(ErrorKind::CrossValidation, std::move(claim), detail) {}
};

class VerificationFailure : public ClaimError {
 public:
  VerificationFailure(std::string claim, const std::string& detail)
      : ClaimError(ErrorKind::Verification, std::move(claim), detail) {}
};

}  // namespace thetakit
