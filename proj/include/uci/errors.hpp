#pragma once

#include <stdexcept>
#include <string>

namespace uci {

// A caller-side precondition was violated (arity, sample size, delta, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A kernel produced a value outside its declared range.
class KernelRangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The number of combinations to enumerate exceeds the configured cap.
class EnumerationCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Inverting a tail bound at this delta gives no information (log(A/delta) <= 0).
class VacuousBoundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed input data.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uci
