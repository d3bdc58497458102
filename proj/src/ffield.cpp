#include "pfprint/ffield.hpp"

#include <openssl/sha.h>

#include <bit>
#include <cctype>

#include "pfprint/error.hpp"

namespace pfprint {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void check_same(const FieldElem& a, const FieldElem& b) {
  if (a.modulus() != b.modulus() || a.modulus() == 0)
    throw Error(ErrorCode::FieldMismatch, "operands belong to F_" + std::to_string(a.modulus()) +
                                              " and F_" + std::to_string(b.modulus()));
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorCode::ZeroInverse, "inverse of 0 in F_" + std::to_string(p));
  // signed 128-bit keeps the Bezout coefficients exact for p close to 2^63
  __int128 r0 = p, r1 = a % p, t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    __int128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t0 < 0) t0 += p;
  return static_cast<std::uint64_t>(t0);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set below 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= (std::uint64_t{1} << 63) || !is_prime(p))
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime in [3, 2^63)");
}

FieldElem PrimeField::zero() const { return FieldElem(0, p_); }
FieldElem PrimeField::one() const { return FieldElem(1, p_); }
FieldElem PrimeField::element(std::uint64_t v) const { return FieldElem(v % p_, p_); }

FieldElem PrimeField::from_signed(std::int64_t v) const {
  if (v >= 0) return element(static_cast<std::uint64_t>(v));
  auto mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return FieldElem(sub(0, mag % p_), p_);
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const noexcept {
  std::uint64_t s = a + b;  // p < 2^63, no wrap
  return s >= p_ ? s - p_ : s;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const noexcept {
  return a >= b ? a - b : a + (p_ - b);
}

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  u128 prod = static_cast<u128>(a) * b;
  if (p_ == kMersenne61) {
    std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t r = lo + hi;
    return r >= kMersenne61 ? r - kMersenne61 : r;
  }
  return static_cast<std::uint64_t>(prod % p_);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const { return inv_mod(a, p_); }

FieldElem FieldElem::inv() const {
  if (p_ == 0) throw Error(ErrorCode::FieldMismatch, "element belongs to no field");
  return FieldElem(inv_mod(value_, p_), p_);
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  std::uint64_t s = a.value_ + b.value_;
  return FieldElem(s >= a.p_ ? s - a.p_ : s, a.p_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  return FieldElem(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + (a.p_ - b.value_), a.p_);
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  check_same(a, b);
  // PrimeField construction re-runs the primality test, so reduce inline.
  u128 prod = static_cast<u128>(a.value_) * b.value_;
  if (a.p_ == PrimeField::kMersenne61) {
    std::uint64_t lo = static_cast<std::uint64_t>(prod) & PrimeField::kMersenne61;
    std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
    std::uint64_t r = lo + hi;
    return FieldElem(r >= PrimeField::kMersenne61 ? r - PrimeField::kMersenne61 : r, a.p_);
  }
  return FieldElem(static_cast<std::uint64_t>(prod % a.p_), a.p_);
}

FieldElem operator-(const FieldElem& a) {
  return FieldElem(a.value_ == 0 ? 0 : a.p_ - a.value_, a.p_);
}

std::string to_string(const FieldElem& x) { return std::to_string(x.value()); }

Seed parse_seed_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty() || hex.size() > 64)
    throw Error(ErrorCode::ParseError, "seed must be 1..64 hex digits");
  std::string padded(64 - hex.size(), '0');
  padded.append(hex);
  Seed seed{};
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = nibble(padded[2 * i]), lo = nibble(padded[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::ParseError, "seed has a non-hex digit");
    seed[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return seed;
}

std::string to_hex(const Seed& seed) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (auto byte : seed) {
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 0xf]);
  }
  return out;
}

SeedStream::SeedStream(const Seed& seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

void SeedStream::refill() {
  std::array<std::uint8_t, 48> msg{};
  std::copy(seed_.begin(), seed_.end(), msg.begin());
  for (int i = 0; i < 8; ++i) {
    msg[32 + i] = static_cast<std::uint8_t>(stream_ >> (8 * i));
    msg[40 + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  }
  std::array<std::uint8_t, SHA256_DIGEST_LENGTH> digest{};
  SHA256(msg.data(), msg.size(), digest.data());
  for (std::size_t w = 0; w < 4; ++w) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{digest[8 * w + i]} << (8 * i);
    block_[w] = v;
  }
  ++counter_;
  used_ = 0;
}

std::uint64_t SeedStream::next_u64() {
  if (used_ == block_.size()) refill();
  return block_[used_++];
}

FieldElem sample_point(SeedStream& rng, const PrimeField& field) {
  const std::uint64_t p = field.modulus();
  const std::uint64_t mask = std::bit_ceil(p) - 1;  // p is odd, so this is bitlen(p) ones
  for (;;) {
    std::uint64_t v = rng.next_u64() & mask;
    if (v >= 2 && v < p) return field.element(v);
  }
}

}  // namespace pfprint
