#pragma once

#include <stdexcept>
#include <string>

namespace sc231 {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected permutation input: empty, duplicate value, value outside 1..n,
/// or unparseable text.
class InvalidPermutation : public Error {
 public:
  enum class Reason { Empty, Duplicate, OutOfRange, BadFormat };

  InvalidPermutation(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// contract() needs the values 1 and 2 to sit in a contiguous block
/// (index >= 2).
class IndexTooLow : public Error {
 public:
  using Error::Error;
};

/// The iteration safety cap of the sort loop was exceeded. No permutation is
/// known to need more than (n+1)(n-2)/2 passes, so hitting this means either
/// corrupted input or a genuine counterexample; both must abort loudly.
class InternalBoundExceeded : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (bad n, bad probability, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace sc231
