#pragma once

#include <stdexcept>
#include <string>

namespace mplab {

enum class Errc {
  NonOrthonormalFrame,
  BadWidth,
  NonCylinder,
  DimensionMismatch,
  NonFiniteCoefficient,
  UnknownPreset,
  InsufficientSamples,
  NegativeInput,
  NonPositiveK,
  NoAdmissibleWidth,
  CosineDegenerate,
  BadParams,
  UnknownAnalyticFunction,
  UnknownCounterexample,
  BadScale,
  NonMonotoneStencil,
  NoConvergence,
  HypothesisNotMet,
  ConfigError,
};

const char* errc_name(Errc c);

/// Single exception type for the whole library; the code identifies the
/// failed contract, the message carries the witness (point, value, field).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace mplab
