#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ness {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a documented precondition (wrong model kind, bad lengths, ...).
class SpecificationError : public Error {
public:
  using Error::Error;
};

/// Reduced or dual parameters cannot be formed (e.g. jx + jy == 0).
class DegenerateParameterization : public Error {
public:
  using Error::Error;
};

/// The drift matrix is not Hurwitz, so the stationary Lyapunov equation has no unique solution.
class NoUniqueNess : public Error {
public:
  NoUniqueNess(const std::string& what, std::complex<double> eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}

  std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }

private:
  std::complex<double> eigenvalue_;
};

/// A linear solve or eigen-solve failed to deliver a trustworthy answer.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// g2 denominator vanishes: at least one end emits no photons.
class UndefinedCorrelator : public Error {
public:
  using Error::Error;
};

/// The dense oracle would exceed its size limits.
class ResourceError : public Error {
public:
  using Error::Error;
};

/// The dense Liouvillian has a null space of dimension != 1.
class DegenerateNess : public Error {
public:
  using Error::Error;
};

/// Configuration document is malformed; `key_path` points at the offending entry.
class ConfigError : public Error {
public:
  ConfigError(const std::string& key_path, const std::string& message)
      : Error(key_path.empty() ? message : key_path + ": " + message), key_path_(key_path) {}

  const std::string& key_path() const noexcept { return key_path_; }

private:
  std::string key_path_;
};

/// Output files could not be written.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace ness
