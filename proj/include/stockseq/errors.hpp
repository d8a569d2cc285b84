#pragma once

#include <stdexcept>
#include <string>

namespace stockseq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data violates an instance invariant (sizes, signs, sums, slot counts).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class InvalidArrangement : public Error {
 public:
  using Error::Error;
};

// A (q,T)-pair list that does not satisfy the sequencer's preconditions.
class InvalidPairs : public Error {
 public:
  using Error::Error;
};

// An operation was called outside the regime where it is defined.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

class InvalidTransform : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class LpError : public Error {
 public:
  using Error::Error;
};

// A proven structural property failed at runtime. Always a bug.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace stockseq
