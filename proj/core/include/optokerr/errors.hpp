#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace optokerr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates its domain (nonpositive length, negative power, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Requested steady-state branch index does not exist.
class BranchOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A unique steady state was required but the cavity is bistable.
class MultivaluedState : public Error {
 public:
  MultivaluedState(const std::string& what, std::vector<double> roots)
      : Error(what), roots_(std::move(roots)) {}

  const std::vector<double>& roots() const noexcept { return roots_; }

 private:
  std::vector<double> roots_;
};

/// Undamped mechanical susceptibility evaluated on its pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The spectrum denominator vanishes (instability threshold at this frequency).
class SingularSpectrum : public Error {
 public:
  using Error::Error;
};

/// Malformed parameter file or preset.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace optokerr
