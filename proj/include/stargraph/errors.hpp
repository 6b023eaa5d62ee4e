#pragma once

#include <stdexcept>

namespace stargraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kirchhoff weights fail positivity, count, or normalization.
class WeightError : public Error {
 public:
  using Error::Error;
};

// Slopes of a harmonic candidate violate the weighted flux balance at O.
class KirchhoffError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain (t <= 0, eps not in (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Initial datum has no density with positive mass (pure atoms or zero).
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

}  // namespace stargraph
