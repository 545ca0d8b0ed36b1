#include "gerbe/integer.hpp"

#include <limits>
#include <ostream>

#include "gerbe/error.hpp"

namespace gerbe {

namespace {

mpz_class from_int64(std::int64_t v) {
  mpz_class out;
  // long is 64 bits on the supported LP64 platforms.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  out = static_cast<long>(v);
  return out;
}

}  // namespace

Integer::Integer(const mpz_class& v) { assign_big(mpz_class(v)); }

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<mpz_class>(*other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    if (big_) {
      *big_ = *other.big_;
    } else {
      big_ = std::make_unique<mpz_class>(*other.big_);
    }
  } else {
    big_.reset();
  }
  return *this;
}

void Integer::assign_big(mpz_class&& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    small_ = v.get_si();
    big_.reset();
    return;
  }
  small_ = 0;
  if (big_) {
    *big_ = std::move(v);
  } else {
    big_ = std::make_unique<mpz_class>(std::move(v));
  }
}

int Integer::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

std::size_t Integer::bit_length() const {
  if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
  if (small_ == 0) return 0;
  const auto mag = small_ == std::numeric_limits<std::int64_t>::min()
                       ? std::uint64_t{1} << 63
                       : static_cast<std::uint64_t>(small_ < 0 ? -small_ : small_);
  return 64 - static_cast<std::size_t>(__builtin_clzll(mag));
}

std::int64_t Integer::to_int64() const {
  if (big_) throw Error(ErrorCode::OverflowPolicy, "integer " + str() + " exceeds 64 bits");
  return small_;
}

double Integer::to_double() const { return big_ ? big_->get_d() : static_cast<double>(small_); }

mpz_class Integer::to_mpz() const { return big_ ? *big_ : from_int64(small_); }

std::string Integer::str() const { return big_ ? big_->get_str() : std::to_string(small_); }

Integer Integer::abs() const {
  Integer out(*this);
  if (out.sign() < 0) out.negate();
  return out;
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r = 0;
    if (!__builtin_add_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_big(to_mpz() + rhs.to_mpz());
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r = 0;
    if (!__builtin_sub_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_big(to_mpz() - rhs.to_mpz());
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t r = 0;
    if (!__builtin_mul_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign_big(to_mpz() * rhs.to_mpz());
  return *this;
}

void Integer::sub_mul(const Integer& q, const Integer& b) {
  if (!big_ && !q.big_ && !b.big_) {
    std::int64_t prod = 0;
    std::int64_t r = 0;
    if (!__builtin_mul_overflow(q.small_, b.small_, &prod) &&
        !__builtin_sub_overflow(small_, prod, &r)) {
      small_ = r;
      return;
    }
  }
  assign_big(to_mpz() - q.to_mpz() * b.to_mpz());
}

void Integer::negate() {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) {
    small_ = -small_;
    return;
  }
  assign_big(-to_mpz());
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  // Normalization guarantees a big value never equals an inline one.
  return false;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  const int c = cmp(a.to_mpz(), b.to_mpz());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer div_floor(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidInput, "division by zero");
  if (!a.big_ && !b.big_ &&
      !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
    std::int64_t q = a.small_ / b.small_;
    if ((a.small_ % b.small_ != 0) && ((a.small_ < 0) != (b.small_ < 0))) --q;
    return Integer(q);
  }
  mpz_class q;
  const mpz_class na = a.to_mpz();
  const mpz_class nb = b.to_mpz();
  mpz_fdiv_q(q.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
  return Integer(q);
}

Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r(a);
  r.sub_mul(div_floor(a, b), b);
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_ && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
    std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
    while (y != 0) {
      const std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  mpz_class g;
  const mpz_class na = a.to_mpz();
  const mpz_class nb = b.to_mpz();
  mpz_gcd(g.get_mpz_t(), na.get_mpz_t(), nb.get_mpz_t());
  return Integer(g);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

}  // namespace gerbe
