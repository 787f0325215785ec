#pragma once

#include <stdexcept>
#include <string>

namespace wavehdc {

// Base for all library errors so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Raised when a waveform's sample grid cannot support the requested operation
// (undersampled comb, window shorter than one period, recording overrun).
class SamplingError : public Error {
 public:
  explicit SamplingError(const std::string& msg) : Error(msg) {}
};

class CalibrationError : public Error {
 public:
  explicit CalibrationError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace wavehdc
