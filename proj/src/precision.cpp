#include "thetakit/errors.hpp"
#include "thetakit/real.hpp"

#include <cstdlib>

namespace thetakit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::PrecisionExhausted: return "precision-exhausted";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Range: return "range";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::CrossValidation: return "cross-validation";
    case ErrorKind::Verification: return "verification";
    case ErrorKind::LimitFailure: return "limit-failure";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::UnknownFunction: return "unknown-function";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

PrecisionMode parse_precision_mode(std::string_view name) {
  if (name == "double") return PrecisionMode::Double;
  if (name == "extended") return PrecisionMode::Extended;
  if (name == "multi") return PrecisionMode::Multi;
  throw ConfigError("THETAKIT_PRECISION must be one of double, extended, multi (got '" +
                    std::string(name) + "')");
}

PrecisionMode precision_mode_from_env() {
  const char* value = std::getenv("THETAKIT_PRECISION");
  if (value == nullptr || *value == '\0') return PrecisionMode::Multi;
  return parse_precision_mode(value);
}

std::string_view to_string(PrecisionMode mode) {
  switch (mode) {
    case PrecisionMode::Double: return "double";
    case PrecisionMode::Extended: return "extended";
    case PrecisionMode::Multi: return "multi";
  }
  return "multi";
}

}  // namespace thetakit
