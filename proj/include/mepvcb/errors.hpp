#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mepvcb {

/// Malformed input: bad syntax, invariant violations in a file or record.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on an argument outside its stated domain.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive routine was asked to run beyond its size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Weight = std::int64_t;

inline Weight checked_add(Weight a, Weight b) {
  Weight r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Weight checked_sub(Weight a, Weight b) {
  Weight r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Weight checked_mul(Weight a, Weight b) {
  Weight r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Weight checked_neg(Weight a) { return checked_sub(0, a); }

}  // namespace mepvcb
