#ifndef CONDKIN_ERRORS_HPP
#define CONDKIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace condkin {

// Base error. `module` names the component whose invariant was violated,
// so the config validator can report the origin of each diagnostic.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

// Bad user-facing configuration: grid sizes, widths, file paths.
class InvalidConfiguration : public Error {
 public:
  using Error::Error;
};

// The physical model left its domain of validity (e.g. negative radicand
// in the excitation law: attractive-interaction regime).
class ModelInconsistency : public Error {
 public:
  using Error::Error;
};

// Operation asked to compensate the zero mode, which is excluded.
class SingularMode : public Error {
 public:
  using Error::Error;
};

// The dispersion has no finite E(k)/|k| limit at k -> 0.
class NoSoundSpeed : public Error {
 public:
  using Error::Error;
};

// Bose occupation pole: omega - mu <= 0.
class DivergentOccupation : public Error {
 public:
  using Error::Error;
};

// Runtime numerical failure: NaN/inf state, excessive clipping.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace condkin

#endif
