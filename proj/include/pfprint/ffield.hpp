#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace pfprint {

class FieldElem;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// The prime field F_p with 3 <= p < 2^63.
class PrimeField {
 public:
  static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

  explicit PrimeField(std::uint64_t p = kMersenne61);

  std::uint64_t modulus() const noexcept { return p_; }

  FieldElem zero() const;
  FieldElem one() const;
  /// Reduces v mod p.
  FieldElem element(std::uint64_t v) const;
  FieldElem from_signed(std::int64_t v) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  /// Throws ZeroInverse for a == 0.
  std::uint64_t inv(std::uint64_t a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// An element of F_p. Carries its modulus so that mixing fields is caught at runtime
/// (FieldMismatch). A default-constructed element belongs to no field.
class FieldElem {
 public:
  FieldElem() = default;

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return p_; }
  PrimeField field() const { return PrimeField(p_); }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElem inv() const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a);
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  friend bool operator==(const FieldElem&, const FieldElem&) = default;

 private:
  friend class PrimeField;
  FieldElem(std::uint64_t value, std::uint64_t p) : value_(value), p_(p) {}

  std::uint64_t value_ = 0;
  std::uint64_t p_ = 0;
};

std::string to_string(const FieldElem& x);

using Seed = std::array<std::uint8_t, 32>;

/// Parses 1..64 hex digits, left-padding with zeros to 32 bytes.
Seed parse_seed_hex(std::string_view hex);
std::string to_hex(const Seed& seed);

/// Deterministic byte stream: block i of stream s is SHA-256(seed || le64(s) || le64(i)),
/// consumed as four little-endian 64-bit words.
class SeedStream {
 public:
  explicit SeedStream(const Seed& seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

 private:
  void refill();

  Seed seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  std::size_t used_ = 4;
};

/// Uniform draw from F_p \ {0, 1} by masking to bitlen(p) and rejecting values outside [2, p).
FieldElem sample_point(SeedStream& rng, const PrimeField& field);

}  // namespace pfprint
