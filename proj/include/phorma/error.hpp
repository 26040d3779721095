#ifndef PHORMA_ERROR_HPP
#define PHORMA_ERROR_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace phorma {

// Base of every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (expressions, spec files, sequences).
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Structurally valid input outside an operation's domain
// (rank out of range, empty family, invalid composition, ...).
class domain_error : public error {
 public:
  using error::error;
};

// Why a sequence is not a member of A(a,B,C).
enum class member_fail {
  length,       // wrong number of entries
  bounds,       // entry < 1 or > a_i
  order,        // order restriction B fails
  composition,  // occurrence vector rejected by C
};

inline const char* to_string(member_fail f) {
  switch (f) {
    case member_fail::length: return "length";
    case member_fail::bounds: return "bounds";
    case member_fail::order: return "order";
    case member_fail::composition: return "composition";
  }
  return "?";
}

class not_member_error : public domain_error {
 public:
  not_member_error(const std::string& what, member_fail why)
      : domain_error(what + " [failed condition: " + phorma::to_string(why) + "]"),
        why_(why) {}
  member_fail why() const { return why_; }

 private:
  member_fail why_;
};

// A count or offset left the 64-bit range.
class overflow_error : public error {
 public:
  using error::error;
};

// File and serialization failures (missing file, bad checksum, version skew).
class io_error : public error {
 public:
  using error::error;
};

// 64-bit arithmetic with overflow surfaced as an error, never wrapped.
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("count overflow in 64-bit addition");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("count overflow in 64-bit multiplication");
  return r;
}

}  // namespace phorma

#endif  // PHORMA_ERROR_HPP
