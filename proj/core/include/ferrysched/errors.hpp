#ifndef FERRYSCHED_ERRORS_HPP
#define FERRYSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ferrysched {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// malformed input document (bad key, bad type, bad value); message carries the field path
class SchemaError : public Error {
 public:
  using Error::Error;
};

// structurally valid document that violates a cross-field rule
class InvariantError : public Error {
 public:
  using Error::Error;
};

// instance configuration that makes a network construction impossible
class ConfigError : public Error {
 public:
  using Error::Error;
};

// mixing networks built under different operating modes
class ModeError : public Error {
 public:
  using Error::Error;
};

// requested constraint form whose applicability condition fails
class FormError : public Error {
 public:
  using Error::Error;
};

// input beyond the documented caps of an exhaustive procedure
class LimitError : public Error {
 public:
  using Error::Error;
};

// float-mode residuals too large after refinement
class NumericalError : public Error {
 public:
  using Error::Error;
};

// assignment does not decompose into one unit path per ferry
class PathError : public Error {
 public:
  using Error::Error;
};

// variable or row name that cannot be generated or parsed
class NameError : public Error {
 public:
  using Error::Error;
};

// file cannot be read or written
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ferrysched

#endif
