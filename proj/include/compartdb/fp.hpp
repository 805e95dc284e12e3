#pragma once

#include <cstdint>
#include <stdexcept>

namespace compartdb {

bool is_prime_u32(std::uint32_t n);

inline constexpr std::uint32_t kMersenne31 = 2147483647u;  // 2^31 - 1

/// Arithmetic modulo a prime p < 2^31. Elements are plain uint32_t values
/// in [0, p); reduction of 64-bit products is Barrett-style.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce64(std::uint64_t(a) * b);
  }

  /// Reduces x mod p; valid for x < 2^63.
  std::uint32_t reduce64(std::uint64_t x) const {
    std::uint64_t q = std::uint64_t((unsigned __int128)(x)*magic_ >> 64);
    std::uint64_t r = x - q * p_;
    if (r >= p_) r -= p_;
    return std::uint32_t(r);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // a != 0
  std::uint32_t from_int64(std::int64_t v) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
  std::uint64_t magic_;  // floor(2^64 / p)
};

inline constexpr std::uint32_t kDefaultPrime = kMersenne31;
inline constexpr std::uint32_t kConfirmationPrime = 2147483629u;

}  // namespace compartdb
