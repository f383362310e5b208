#pragma once

#include <stdexcept>
#include <string>

namespace repstring {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A row of a kernel / a pmf does not sum to 1 (or has negative entries).
class NonStochasticError : public Error {
 public:
  NonStochasticError(int row, double sum)
      : Error("non-stochastic row " + std::to_string(row) +
              ", sum = " + std::to_string(sum)),
        row(row),
        sum(sum) {}
  int row;
  double sum;
};

class ReducibleError : public Error {
 public:
  using Error::Error;
};

// Exact machinery requested on a source that only supports sampling.
class UnsupportedExtensionError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage was asked for values its inputs do not cover.
class CoverageGapError : public Error {
 public:
  using Error::Error;
};

class DeficitTooLargeError : public Error {
 public:
  DeficitTooLargeError(double mass, double tol)
      : Error("mass deficit " + std::to_string(mass) + " exceeds tolerance " +
              std::to_string(tol)),
        mass(mass) {}
  double mass;
};

// The MID source cannot anchor a required clock (a selector class has mass 0).
class NonErgodicMidError : public Error {
 public:
  using Error::Error;
};

class DegenerateSourceError : public Error {
 public:
  using Error::Error;
};

class DegenerateVarianceError : public Error {
 public:
  using Error::Error;
};

class AxisMismatchError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace repstring
