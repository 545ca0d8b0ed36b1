#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

namespace gerbe {

/// Exact integer. Values that fit in 64 bits are stored inline; anything
/// larger lives in a GMP integer. Results are renormalized to the inline
/// form whenever they fit, so the common case never allocates.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(std::int64_t v) noexcept : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) noexcept : small_(v) {}           // NOLINT(google-explicit-constructor)
  explicit Integer(const mpz_class& v);

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept = default;
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept = default;
  ~Integer() = default;

  bool is_small() const noexcept { return !big_; }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  int sign() const noexcept;
  bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }

  /// Number of bits in |value| (0 for zero).
  std::size_t bit_length() const;

  bool fits_int64() const noexcept { return !big_; }
  /// Throws Error(OverflowPolicy) when the value does not fit.
  std::int64_t to_int64() const;
  double to_double() const;
  mpz_class to_mpz() const;
  std::string str() const;

  Integer abs() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  /// *this -= q * b, the elimination kernel.
  void sub_mul(const Integer& q, const Integer& b);
  void negate();

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator-(Integer a) {
    a.negate();
    return a;
  }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  /// Quotient rounded toward negative infinity. b must be nonzero.
  friend Integer div_floor(const Integer& a, const Integer& b);
  /// Remainder with the sign of b: a - b * div_floor(a, b).
  friend Integer mod_floor(const Integer& a, const Integer& b);
  friend Integer gcd(const Integer& a, const Integer& b);

 private:
  void assign_big(mpz_class&& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace gerbe
